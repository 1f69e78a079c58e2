"""Multispecies juggling Markov chains: exact stationary laws and checks.

Exact results come back as ``fractions.Fraction``; the float backend
returns plain floats.
"""

from fractions import Fraction

from . import _juggling
from ._juggling import (
    DegenerateParams,
    InvalidArgument,
    JugglingError,
    NotNormalized,
    ReducibleChain,
    SizeCapExceeded,
    apply_bump,
    bumping_sequences,
    stat_E,
    stat_J,
)

__all__ = [
    "Model",
    "JugglingError",
    "InvalidArgument",
    "DegenerateParams",
    "NotNormalized",
    "ReducibleChain",
    "SizeCapExceeded",
    "stat_E",
    "stat_J",
    "complete_homogeneous",
    "bumping_sequences",
    "apply_bump",
    "partition_function",
    "overwriting_stationary",
]


def _text(values):
    return [str(Fraction(v)) if not isinstance(v, str) else v for v in values]


def _value(x):
    return Fraction(x) if isinstance(x, str) else x


class Model:
    """One chain: msjmc, add_drop, annihilation, overwriting or several_jugglers.

    >>> m = Model("msjmc", counts=[1, 1, 1], z=["1/4"] * 4)
    >>> m.formula() == m.solve()
    True
    """

    def __init__(self, model, *, counts=(), n=0, T=0, r=0, c=0, balls=0, z=(), activities=(), backend="exact"):
        self._spec = _juggling.ModelSpec(
            model,
            counts=list(counts),
            n=n,
            T=T,
            r=r,
            c=c,
            balls=balls,
            z=_text(z),
            activities=_text(activities),
            backend=backend,
        )

    @property
    def name(self):
        return self._spec.model

    def states(self):
        return _juggling.states(self._spec)

    def notes(self):
        return _juggling.notes(self._spec)

    def matrix(self):
        return [[_value(x) for x in row] for row in _juggling.matrix(self._spec)]

    def formula(self):
        return [_value(x) for x in _juggling.formula(self._spec)]

    def solve(self):
        return [_value(x) for x in _juggling.solve(self._spec)]

    def stationary(self):
        """Closed form keyed by state label."""
        return dict(zip(self.states(), self.formula()))

    def verify(self, suite="all", negative_control=False):
        return _juggling.verify(self._spec, suite, negative_control)

    def simulate(self, steps=0, seed=1, *, replicas=None, horizon=None, start=None, burn_in=None):
        return _juggling.simulate(self._spec, steps, seed, replicas, horizon, start, burn_in)


def complete_homogeneous(degree, values):
    return Fraction(_juggling.complete_homogeneous(degree, _text(values)))


def partition_function(counts, z):
    return Fraction(_juggling.msjmc_partition_function(list(counts), _text(z)))


def overwriting_stationary(word, T, z):
    return Fraction(_juggling.overwriting_stationary(word, T, _text(z)))
