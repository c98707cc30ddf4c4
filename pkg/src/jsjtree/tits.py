"""Tits boundary of a product of two free-group Cayley trees.

Words are strings over ``a, b, c, ...``; an upper-case letter is the inverse
generator (``"aB"`` is a b^-1).  A boundary point of one tree is an
eventually periodic end ``u w w w ...``; a boundary point of the product is
a :class:`JoinPoint` ``(xi, theta, eta)`` with slope ``theta`` in
``[0, pi/2]``.

Distance model: in each factor, distinct ends are at Tits distance pi
(truncated from infinity); the product boundary carries the spherical join
metric ``cos d = cos t cos t' c1 + sin t sin t' c2`` with ``c_i = +1`` for
equal factor ends and ``-1`` otherwise.  It is evaluated as a half-angle
``atan2`` so that nearby and antipodal points keep full precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PreconditionError

__all__ = [
    "TreeEnd",
    "JoinPoint",
    "PiConvergenceCertificate",
    "reduce_word",
    "inverse_word",
    "cyclic_reduce",
    "word_power",
    "canonicalize",
    "end_action",
    "axis_ends",
    "translation_length",
    "prefix_agreement",
    "tits_distance",
    "factor_tits_distance",
    "act",
    "limit_points",
    "iterate_limit",
    "iterate_explicit",
    "explicit_agreement",
    "default_theta_grid",
    "DynamicsTrace",
    "orbit_direction",
    "verify_pi_convergence",
    "single_tree_dynamics",
    "tits_diameter_sample",
    "random_word",
    "random_end",
    "random_join_point",
    "summarize",
]

HALF_PI = math.pi / 2
RANK_ONE_THRESHOLD = 1.5 * math.pi
_SNAP = 1e-12


def _inv(letter: str) -> str:
    return letter.swapcase()


def _check_letters(w: str, rank: int | None = None) -> None:
    for ch in w:
        if not ch.isalpha() or not ch.isascii():
            raise PreconditionError(f"word {w!r} contains a non-letter {ch!r}")
        if rank is not None and ord(ch.lower()) - ord("a") >= rank:
            raise PreconditionError(f"letter {ch!r} is outside the rank-{rank} alphabet")


def reduce_word(w: str) -> str:
    _check_letters(w)
    out: list[str] = []
    for ch in w:
        if out and out[-1] == _inv(ch):
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def inverse_word(w: str) -> str:
    return "".join(_inv(ch) for ch in reversed(w))


def word_power(w: str, k: int) -> str:
    if k < 0:
        return word_power(inverse_word(w), -k)
    return reduce_word(w * k)


def cyclic_reduce(w: str) -> tuple[str, str]:
    """Split a word as ``c + core + c^-1`` with ``core`` cyclically reduced."""
    w = reduce_word(w)
    i = 0
    while len(w) - 2 * i >= 2 and w[i] == _inv(w[-1 - i]):
        i += 1
    return w[:i], w[i : len(w) - i]


def translation_length(w: str) -> int:
    return len(cyclic_reduce(w)[1])


def _primitive_root(w: str) -> str:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


@dataclass(frozen=True, order=True)
class TreeEnd:
    """The end ``prefix + period + period + ...`` in canonical form."""

    prefix: str
    period: str

    def expand(self, n: int) -> str:
        out = self.prefix
        if len(out) < n:
            out += self.period * ((n - len(out)) // len(self.period) + 1)
        return out[:n]

    def __str__(self) -> str:
        return f"{self.prefix}({self.period})^inf"

    def to_json(self) -> dict:
        return {"prefix": self.prefix, "period": self.period}


def canonicalize(u: str, w: str) -> TreeEnd:
    """Canonical ``(prefix, period)`` of the end ``u w^inf``.

    The period is cyclically reduced and primitive, and the prefix is as
    short as possible, so two ends are equal iff their canonical forms are.
    """
    w = reduce_word(w)
    if not w:
        raise PreconditionError("an end needs a nonempty period")
    c, core = cyclic_reduce(w)
    u = reduce_word(u + c)
    w = _primitive_root(core)
    while u and u[-1] == _inv(w[0]):
        u = u[:-1]
        w = w[1:] + w[0]
    while u and u[-1] == w[-1]:
        u = u[:-1]
        w = w[-1] + w[:-1]
    return TreeEnd(u, w)


def end_action(v: str, end: TreeEnd) -> TreeEnd:
    return canonicalize(v + end.prefix, end.period)


def axis_ends(v: str) -> tuple[TreeEnd, TreeEnd, int]:
    """Repelling end, attracting end and translation length of a nontrivial word."""
    c, core = cyclic_reduce(v)
    if not core:
        raise PreconditionError("the trivial word has no axis")
    return canonicalize(c, inverse_word(core)), canonicalize(c, core), len(core)


def prefix_agreement(x: TreeEnd, y: TreeEnd, limit: int = 256) -> int:
    """Length of the common prefix of two ends, capped at ``limit``."""
    a, b = x.expand(limit), y.expand(limit)
    for i, (p, q) in enumerate(zip(a, b)):
        if p != q:
            return i
    return limit


def factor_tits_distance(x: TreeEnd, y: TreeEnd) -> float:
    """Single-tree Tits distance: 0 for equal ends, +inf otherwise."""
    return 0.0 if x == y else math.inf


def _snap(theta: float) -> float:
    if abs(theta) < _SNAP:
        return 0.0
    if abs(theta - HALF_PI) < _SNAP:
        return HALF_PI
    return theta


def _cos_sin(theta: float) -> tuple[float, float]:
    if theta == 0.0:
        return 1.0, 0.0
    if theta == HALF_PI:
        return 0.0, 1.0
    return math.cos(theta), math.sin(theta)


@dataclass(frozen=True)
class JoinPoint:
    """Boundary point of T1 x T2; at ``theta == 0`` only ``xi`` is meaningful,
    at ``theta == pi/2`` only ``eta``; the unused coordinate is ``None``."""

    xi: TreeEnd | None
    theta: float
    eta: TreeEnd | None

    def __post_init__(self):
        t = _snap(float(self.theta))
        if not (0.0 <= t <= HALF_PI):
            raise PreconditionError(f"slope {self.theta} is outside [0, pi/2]")
        object.__setattr__(self, "theta", t)
        if t == 0.0:
            object.__setattr__(self, "eta", None)
        if t == HALF_PI:
            object.__setattr__(self, "xi", None)
        if (t < HALF_PI and self.xi is None) or (t > 0.0 and self.eta is None):
            raise PreconditionError("a meaningful factor coordinate is missing")

    def to_json(self) -> dict:
        return {
            "xi": None if self.xi is None else str(self.xi),
            "theta": self.theta,
            "eta": None if self.eta is None else str(self.eta),
        }


def tits_distance(x: JoinPoint, y: JoinPoint) -> float:
    if x == y:
        return 0.0
    cx, sx = _cos_sin(x.theta)
    cy, sy = _cos_sin(y.theta)
    c1 = 1.0 if x.xi == y.xi else -1.0
    c2 = 1.0 if x.eta == y.eta else -1.0
    # angle between unit vectors u, v: 2 atan2(|u - v|, |u + v|)
    diff = math.hypot(cx - c1 * cy, sx - c2 * sy)
    summ = math.hypot(cx + c1 * cy, sx + c2 * sy)
    return 2.0 * math.atan2(diff, summ)


Isometry = Sequence[str]


def act(g: Isometry, x: JoinPoint) -> JoinPoint:
    w1, w2 = g
    return JoinPoint(
        None if x.xi is None else end_action(w1, x.xi),
        x.theta,
        None if x.eta is None else end_action(w2, x.eta),
    )


def limit_points(g: Isometry) -> tuple[JoinPoint, JoinPoint]:
    """Repelling point ``n`` and attracting point ``p`` of the isometry ``(w1, w2)``."""
    w1, w2 = g
    l1, l2 = translation_length(w1), translation_length(w2)
    if l1 == 0 and l2 == 0:
        raise PreconditionError("both factor words are elliptic (trivial translation length)")
    theta = math.atan2(l2, l1)
    ends1 = axis_ends(w1) if l1 else (None, None, 0)
    ends2 = axis_ends(w2) if l2 else (None, None, 0)
    n = JoinPoint(ends1[0], theta, ends2[0])
    p = JoinPoint(ends1[1], theta, ends2[1])
    return n, p


def _factor_limit(w: str, end: TreeEnd | None) -> TreeEnd | None:
    if end is None or not reduce_word(w):
        return end
    repel, attract, _ = axis_ends(w)
    return end if end == repel else attract


def iterate_limit(g: Isometry, c: JoinPoint) -> JoinPoint:
    """Limit of ``g^k c``: each factor end flows to the attracting end unless it
    sits at the repelling one; the slope is unchanged."""
    w1, w2 = g
    if translation_length(w1) == 0 and reduce_word(w1):
        raise PreconditionError(f"factor word {w1!r} is elliptic but nontrivial")
    if translation_length(w2) == 0 and reduce_word(w2):
        raise PreconditionError(f"factor word {w2!r} is elliptic but nontrivial")
    return JoinPoint(_factor_limit(w1, c.xi), c.theta, _factor_limit(w2, c.eta))


def iterate_explicit(g: Isometry, c: JoinPoint, k: int) -> JoinPoint:
    w1, w2 = g
    return act((word_power(w1, k), word_power(w2, k)), c)


def explicit_agreement(g: Isometry, c: JoinPoint, k: int = 64, limit: int = 256) -> int:
    """Smallest factor-wise prefix agreement between ``g^k c`` and the closed-form limit."""
    L = iterate_limit(g, c)
    E = iterate_explicit(g, c, k)
    vals = []
    for a, b in ((E.xi, L.xi), (E.eta, L.eta)):
        if a is not None:
            vals.append(prefix_agreement(a, b, limit))
    return min(vals)


def orbit_direction(g: Isometry, k: int) -> float:
    """Slope of the orbit point ``g^k o`` seen from the base point ``o``."""
    w1, w2 = g
    return math.atan2(len(word_power(w2, k)), len(word_power(w1, k)))


@dataclass(frozen=True)
class PiConvergenceCertificate:
    isometry: tuple[str, str]
    n: JoinPoint
    p: JoinPoint
    theta: float
    c: JoinPoint
    d_cn: float
    L: JoinPoint
    d_Lp: float
    tol: float

    @property
    def vacuous(self) -> bool:
        return self.d_cn <= self.theta

    @property
    def violation(self) -> float:
        return 0.0 if self.vacuous else max(0.0, self.d_Lp - (math.pi - self.theta))

    @property
    def verdict(self) -> str:
        return "pass" if self.vacuous or self.d_Lp <= math.pi - self.theta + self.tol else "fail"

    def to_json(self) -> dict:
        return {
            "isometry": list(self.isometry),
            "n": self.n.to_json(),
            "p": self.p.to_json(),
            "theta": self.theta,
            "c": self.c.to_json(),
            "d_cn": self.d_cn,
            "L": self.L.to_json(),
            "d_Lp": self.d_Lp,
            "verdict": self.verdict,
            "vacuous": self.vacuous,
        }


def random_word(rng: np.random.Generator, rank: int, length: int, cyclic: bool = False) -> str:
    letters = [chr(ord("a") + i) for i in range(rank)]
    letters += [ch.upper() for ch in letters]
    while True:
        out = ""
        while len(out) < length:
            ch = letters[rng.integers(len(letters))]
            if not out or out[-1] != _inv(ch):
                out += ch
        if not cyclic or length < 2 or out[0] != _inv(out[-1]):
            return out


def random_end(rng: np.random.Generator, rank: int, max_prefix: int = 4, max_period: int = 3) -> TreeEnd:
    u = random_word(rng, rank, int(rng.integers(0, max_prefix + 1)))
    w = random_word(rng, rank, int(rng.integers(1, max_period + 1)), cyclic=True)
    return canonicalize(u, w)


def random_join_point(
    rng: np.random.Generator,
    ranks: tuple[int, int] = (2, 2),
    slope_steps: int = 8,
    special: tuple[JoinPoint, ...] = (),
) -> JoinPoint:
    """Seeded sample with slope ``k pi / (2 slope_steps)``; factor ends are
    occasionally copied from the ``special`` points to hit fixed ends."""
    theta = HALF_PI * int(rng.integers(0, slope_steps + 1)) / slope_steps
    ends = []
    for slot, rank in ((0, ranks[0]), (1, ranks[1])):
        end = random_end(rng, rank)
        roll = rng.random()
        for k, sp in enumerate(special):
            coord = sp.xi if slot == 0 else sp.eta
            if coord is not None and 0.15 * k <= roll < 0.15 * (k + 1):
                end = coord
        ends.append(end)
    return JoinPoint(ends[0], theta, ends[1])


def default_theta_grid(points: int = 9) -> list[float]:
    return [math.pi * k / (points - 1) for k in range(points)]


def verify_pi_convergence(
    g: Isometry,
    samples: int = 500,
    theta_grid: Sequence[float] | None = None,
    seed: int = 0,
    tol: float = 1e-9,
    ranks: tuple[int, int] = (2, 2),
) -> list[PiConvergenceCertificate]:
    """One certificate per (sample, grid value).

    Sample ``i`` is drawn from its own generator seeded by ``(seed, i)``,
    so results do not depend on how the work is split.
    """
    if tol <= 0:
        raise PreconditionError("tolerance must be positive")
    g = (reduce_word(g[0]), reduce_word(g[1]))
    for w, r in zip(g, ranks):
        _check_letters(w, r)
    grid = default_theta_grid() if theta_grid is None else list(theta_grid)
    n, p = limit_points(g)
    certs = []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        c = random_join_point(rng, ranks, special=(n, p))
        L = iterate_limit(g, c)
        d_cn = tits_distance(c, n)
        d_Lp = tits_distance(L, p)
        for theta in grid:
            certs.append(PiConvergenceCertificate(g, n, p, theta, c, d_cn, L, d_Lp, tol))
    return certs


def summarize(certs: Sequence[PiConvergenceCertificate]) -> dict:
    fails = [c for c in certs if c.verdict == "fail"]
    return {
        "pass": len(certs) - len(fails),
        "fail": len(fails),
        "vacuous": sum(1 for c in certs if c.vacuous),
        "max_violation": max((c.violation for c in certs), default=0.0),
    }


@dataclass
class DynamicsTrace:
    word: str
    end: TreeEnd
    frozen: bool
    agreement: list[int]

    @property
    def nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.agreement, self.agreement[1:]))

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "end": str(self.end),
            "frozen": self.frozen,
            "agreement": self.agreement,
            "nondecreasing": self.nondecreasing,
        }


def single_tree_dynamics(
    w: str,
    ends: Sequence[TreeEnd] | None = None,
    k_max: int = 64,
    samples: int = 10,
    seed: int = 0,
    rank: int = 2,
    limit: int = 512,
    on_axis: bool = False,
) -> list[DynamicsTrace]:
    """North-south dynamics of ``w`` on the ends of one tree.

    For each end the trace records the prefix agreement of ``w^k end`` with
    the attracting end for ``k = 0..k_max``.  The repelling end is reported
    as frozen (its trace compares it with itself).  Tits distances in this
    model are 0 or +inf (see :func:`factor_tits_distance`).

    Agreement is read from the identity.  When ``w`` is not cyclically
    reduced the identity is off the axis and the trace can dip once before
    growing (``w = "aBA"``); ``on_axis=True`` reads it from the axis point
    ``c`` of ``w = c core c^-1`` instead, where it never decreases.
    """
    if rank < 2:
        raise PreconditionError("single-tree dynamics needs rank >= 2")
    w = reduce_word(w)
    _check_letters(w, rank)
    repel, attract, _ = axis_ends(w)
    shift = inverse_word(cyclic_reduce(w)[0]) if on_axis else ""

    def agree(e: TreeEnd) -> int:
        return prefix_agreement(end_action(shift, e), end_action(shift, attract), limit)

    if ends is None:
        ends = []
        rng = np.random.default_rng(seed)
        while len(ends) < samples:
            e = random_end(rng, rank)
            if e != repel:
                ends.append(e)
    traces = []
    for e in ends:
        if e == repel:
            traces.append(DynamicsTrace(w, e, True, [prefix_agreement(e, repel, limit)] * (k_max + 1)))
            continue
        trace = [agree(end_action(word_power(w, k), e)) for k in range(k_max + 1)]
        traces.append(DynamicsTrace(w, e, False, trace))
    return traces


def tits_diameter_sample(
    ranks: tuple[int, int] = (2, 2), samples: int = 10_000, seed: int = 0
) -> dict:
    """Largest sampled join distance, against pi and the 3pi/2 rank-one threshold."""
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(samples):
        x = random_join_point(rng, ranks)
        y = random_join_point(rng, ranks)
        best = max(best, tits_distance(x, y))
    return {
        "samples": samples,
        "max_distance": best,
        "pi": math.pi,
        "rank_one_threshold": RANK_ONE_THRESHOLD,
        "below_threshold": best < RANK_ONE_THRESHOLD,
    }
