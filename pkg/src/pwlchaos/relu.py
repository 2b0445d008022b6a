"""Exact 1-D ReLU networks: evaluation, tent-map compilation, stacking and PWL extraction."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .pwl import Interval, PwlFunction, as_rational

RELU = "relu"
IDENTITY = "identity"


@dataclass(frozen=True)
class Layer:
    """Affine map followed by an activation.

    ``weights`` has one row per output unit.  With ``activation == "relu"``
    each unit computes ``max(v, offset)``; ``offset`` is 0 for plain ReLU.
    """

    weights: tuple
    biases: tuple
    activation: str = RELU
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        w = tuple(tuple(as_rational(v) for v in row) for row in self.weights)
        b = tuple(as_rational(v) for v in self.biases)
        if len(w) != len(b):
            raise ValueError("one bias per output unit required")
        if not w or any(len(row) != len(w[0]) for row in w):
            raise ValueError("ragged or empty weight matrix")
        if self.activation not in (RELU, IDENTITY):
            raise ValueError(f"unknown activation {self.activation!r}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "biases", b)
        object.__setattr__(self, "offset", as_rational(self.offset))

    @property
    def fan_in(self) -> int:
        return len(self.weights[0])

    @property
    def fan_out(self) -> int:
        return len(self.weights)

    def affine(self, v: Sequence[Fraction]) -> list[Fraction]:
        return [sum((w * x for w, x in zip(row, v)), b) for row, b in zip(self.weights, self.biases)]

    def activate(self, z: Fraction) -> Fraction:
        if self.activation == IDENTITY:
            return z
        return z if z > self.offset else self.offset


@dataclass(frozen=True)
class ReluNetwork:
    layers: tuple

    def __post_init__(self):
        layers = tuple(self.layers)
        if not layers:
            raise ValueError("network needs at least one layer")
        if layers[0].fan_in != 1 or layers[-1].fan_out != 1:
            raise ValueError("only scalar input and output are supported")
        for a, b in zip(layers, layers[1:]):
            if a.fan_out != b.fan_in:
                raise ValueError(f"layer widths {a.fan_out} -> {b.fan_in} do not chain")
        if layers[-1].activation != IDENTITY:
            raise ValueError("final layer must use the identity activation")
        object.__setattr__(self, "layers", layers)

    @property
    def depth(self) -> int:
        """Number of hidden (ReLU) layers."""
        return sum(1 for layer in self.layers if layer.activation == RELU)

    @property
    def width(self) -> int:
        return max((layer.fan_out for layer in self.layers[:-1]), default=0)


def eval_network(net: ReluNetwork, x) -> Fraction:
    v = [as_rational(x)]
    for layer in net.layers:
        v = [layer.activate(z) for z in layer.affine(v)]
    return v[0]


def compile_tent(mu) -> ReluNetwork:
    """Width-2 network ``mu*relu(x) - 2*mu*relu(x - 1/2)``, equal to the tent map on [0, 1]."""
    mu = as_rational(mu)
    if not 0 < mu <= 2:
        raise ValueError("tent parameter must lie in (0, 2]")
    hidden = Layer(((1,), (1,)), (0, Fraction(-1, 2)), RELU)
    out = Layer(((mu, -2 * mu),), (0,), IDENTITY)
    return ReluNetwork((hidden, out))


def _merge(outer: Layer, inner: Layer) -> Layer:
    """Fold the affine ``inner`` (identity activation) into ``outer``'s affine map."""
    w = tuple(
        tuple(sum(o[k] * inner.weights[k][j] for k in range(inner.fan_out)) for j in range(inner.fan_in))
        for o in outer.weights
    )
    b = tuple(sum((o[k] * inner.biases[k] for k in range(inner.fan_out)), ob) for o, ob in zip(outer.weights, outer.biases))
    return Layer(w, b, outer.activation, outer.offset)


def stack(net: ReluNetwork, k: int) -> ReluNetwork:
    """``k`` copies of ``net`` end to end; each copy's linear read-out is folded into the next copy's first layer."""
    if k < 1:
        raise ValueError("k must be positive")
    layers = list(net.layers)
    for _ in range(k - 1):
        tail = layers.pop()
        first = _merge(net.layers[0], tail)
        layers.append(first)
        layers.extend(net.layers[1:])
    return ReluNetwork(tuple(layers))


def extract_pwl(net: ReluNetwork, domain: Interval = Interval(0, 1)) -> PwlFunction:
    """The exact PWL function the network computes on ``domain``.

    Keeps the sorted x-breakpoints and every unit's value there; all units are
    affine between consecutive breakpoints, so a ReLU only needs new
    breakpoints where its pre-activation crosses the kink level.
    """
    xs = [domain.lo, domain.hi]
    vals = [[domain.lo], [domain.hi]]
    for layer in net.layers:
        pre = [layer.affine(v) for v in vals]
        if layer.activation == RELU:
            c = layer.offset
            new_xs = [xs[0]]
            new_pre = [pre[0]]
            for i in range(len(xs) - 1):
                x0, x1 = xs[i], xs[i + 1]
                p0, p1 = pre[i], pre[i + 1]
                cuts = set()
                for u in range(layer.fan_out):
                    a, b = p0[u] - c, p1[u] - c
                    if (a < 0 < b) or (b < 0 < a):
                        cuts.add(a / (a - b))
                for s in sorted(cuts):
                    new_xs.append(x0 + s * (x1 - x0))
                    new_pre.append([pa + s * (pb - pa) for pa, pb in zip(p0, p1)])
                new_xs.append(x1)
                new_pre.append(p1)
            xs, pre = new_xs, new_pre
        vals = [[layer.activate(z) for z in row] for row in pre]
    return PwlFunction(tuple(xs), tuple(v[0] for v in vals))


def piece_bound(l: int, u: int) -> int:
    """Maximum affine pieces of a depth-l, width-u ReLU net on a line: ``(2u)**l``."""
    if l < 1 or u < 1:
        raise ValueError("l and u must be positive")
    return (2 * u) ** l
