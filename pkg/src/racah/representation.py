"""The split-basis representation on a truncated triangular lattice of states.

States |t,s> live on {t >= 0, 0 <= s <= t}.  One generator is diagonal, the
rest act by finite displacement stencils whose boundary factors vanish
exactly on the lattice edges.  Raising in t has coefficient 1, so the module
is infinite in t; a finite window never fabricates cutoff coefficients.
Instead each operator tracks which window states "leak" (their true image
reaches past the window), and equalities are asserted only on reliable
states, making every assertion an exact statement about the infinite module.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .core import CONTIGUOUS, gen_C, to_contiguous
from .freealg import AlgebraError, Gen, NCPoly

State = tuple[int, int]
LatticeState = State                      # (t, s) with t >= 0 and 0 <= s <= t
LinearCombo = dict[State, Fraction]       # zero coefficients never stored

ZERO = Fraction(0)
ONE = Fraction(1)


class ParamError(AlgebraError):
    """Parameter choice makes a coefficient denominator vanish in-window."""


@dataclass(frozen=True)
class RepParams:
    c1: Fraction
    c2: Fraction
    c3: Fraction
    c4: Fraction
    N: Fraction

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4", "N"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def n(self, *which: int) -> Fraction:
        cs = (self.c1, self.c2, self.c3, self.c4)
        return self.N + sum((cs[i - 1] for i in which), ZERO)

    def describe(self) -> str:
        return (f"c=({self.c1},{self.c2},{self.c3},{self.c4}) N={self.N}")


def validate_params(p: RepParams, window: int) -> list[str]:
    """Names every s in 0..window whose coefficient denominators vanish."""
    errors = []
    n123 = p.n(1, 2, 3)
    for s in range(window + 1):
        for label, q in (("n123-s", n123 - s),
                         ("n123-s-1", n123 - s - 1),
                         ("2n123-2s+1", 2 * n123 - 2 * s + 1),
                         ("2n123-2s-1", 2 * n123 - 2 * s - 1)):
            if q == 0:
                errors.append(f"{label} vanishes at s={s}")
    return errors


def ensure_valid(p: RepParams, window: int) -> None:
    errors = validate_params(p, window)
    if errors:
        raise ParamError("; ".join(errors))


# -- coefficient stencils -----------------------------------------------------
# Each returns the nonzero displacements {(dt, ds): value} of one generator
# acting on |t,s>.  Boundary vanishing is carried by explicit factors (s-t),
# s, and their shifts, so the lattice closes exactly.

def c12_stencil(p: RepParams, t: int, s: int) -> dict:
    n12, n123 = p.n(1, 2), p.n(1, 2, 3)
    west = (s - t) * (p.N + 1 - t) * (p.N + 2 * p.c2 - t) * (2 * n123 - t - s - 1)
    stay = (n12 - t) * (n12 - t - 1)
    return {(-1, 0): west, (0, 0): stay}


def c23_stencil(p: RepParams, t: int, s: int) -> dict:
    n23 = p.n(2, 3)
    return {(0, 0): (n23 - t) * (n23 - t - 1), (1, 0): ONE}


def c123_stencil(p: RepParams, t: int, s: int) -> dict:
    n123 = p.n(1, 2, 3)
    return {(0, 0): (n123 - s) * (n123 - s - 1)}


def _east(p: RepParams, s: int) -> Fraction:
    n123 = p.n(1, 2, 3)
    return Fraction(1, 2) + n123 * (n123 + 2 * p.c4 - 1) \
        / (2 * (n123 - s) * (n123 - s - 1))


def _southeast(p: RepParams, s: int) -> Fraction:
    n123, n1234 = p.n(1, 2, 3), p.n(1, 2, 3, 4)
    return (s * (s + 2 * p.c4 - 1) * (2 * n123 - s) * (2 * n1234 - s - 1)
            / (4 * (2 * n123 - 2 * s + 1) * (2 * n123 - 2 * s - 1)
               * (n123 - s) ** 2))


def c34_stencil(p: RepParams, t: int, s: int) -> dict:
    n12, n123, n1234 = p.n(1, 2), p.n(1, 2, 3), p.n(1, 2, 3, 4)
    northwest = -(s - t) * (s - t + 1) * (p.N + 1 - t) * (p.N + 2 * p.c2 - t)
    north = -(s - t) * (s - 2 * p.c3 - t + 1)
    west = c12_stencil(p, t, s)[(-1, 0)] * (1 - _east(p, s))
    # the (t-dependent) fraction numerator mirrors the one in c234_stencil;
    # it is pinned by the containment commutators (constraint-solved, see
    # tests), which a (n123-t)(n12-c3-t-1) variant violates
    stay = (-n123 * (n123 - t - 1) * (n12 - p.c3 - t) * (n123 + 2 * p.c4 - 1)
            / (2 * (n123 - s) * (n123 - s - 1))
            + n1234 * (n1234 - 1) / 2
            - (n123 - s) * (n123 - s - 1) / 2
            + (n12 - t) * (n12 - t - 1) / 2
            + (p.c3 * (p.c3 - 1) + p.c4 * (p.c4 - 1)) / 2)
    south = -_southeast(p, s) * (2 * n123 - t - s - 1) * (2 * n12 - s - t)
    southwest = (-_southeast(p, s) * (2 * n123 - t - s - 1)
                 * (p.N + 1 - t) * (2 * n123 - t - s) * (p.N + 2 * p.c2 - t))
    return {(-1, 1): northwest, (0, 1): north, (-1, 0): west,
            (0, 0): stay, (-1, -1): southwest, (0, -1): south}


def c234_stencil(p: RepParams, t: int, s: int) -> dict:
    n23, n123, n1234 = p.n(2, 3), p.n(1, 2, 3), p.n(1, 2, 3, 4)
    north = (s - t) * (2 * n23 - s - t - 1)
    northeast = ONE
    stay = (n123 * (n123 - t - 1) * (n23 - p.c1 - t) * (n123 + 2 * p.c4 - 1)
            / (2 * (n123 - s) * (n123 - s - 1))
            + n1234 * (n1234 - 1) / 2
            - (n123 - s) * (n123 - s - 1) / 2
            + (n23 - t) * (n23 - t - 1) / 2
            + (p.c1 * (p.c1 - 1) + p.c4 * (p.c4 - 1)) / 2)
    east = _east(p, s)
    southeast = _southeast(p, s)
    south = southeast * (s - 2 * p.c1 - t) * (2 * n123 - t - s - 1)
    return {(0, 1): north, (1, 1): northeast, (0, 0): stay,
            (1, 0): east, (0, -1): south, (1, -1): southeast}


_STENCILS: dict[str, Callable] = {
    "C12": c12_stencil,
    "C23": c23_stencil,
    "C123": c123_stencil,
    "C34": c34_stencil,
    "C234": c234_stencil,
}

_SCALARS: dict[str, Callable[[RepParams], Fraction]] = {
    "C1": lambda p: p.c1 * (p.c1 - 1),
    "C2": lambda p: p.c2 * (p.c2 - 1),
    "C3": lambda p: p.c3 * (p.c3 - 1),
    "C4": lambda p: p.c4 * (p.c4 - 1),
    "C1234": lambda p: p.n(1, 2, 3, 4) * (p.n(1, 2, 3, 4) - 1),
}


def coeff(gen: str, t: int, s: int, p: RepParams) -> dict:
    """Nonzero displacement coefficients of one non-scalar generator."""
    if gen not in _STENCILS:
        raise AlgebraError(f"no displacement stencil for {gen!r}")
    if t < 0 or s < 0 or s > t:
        raise AlgebraError(f"({t},{s}) is not a lattice state")
    return {d: v for d, v in _STENCILS[gen](p, t, s).items() if v}


# -- exact sparse operators ----------------------------------------------------

def triangle_states(window: int) -> tuple[State, ...]:
    return tuple((t, s) for t in range(window + 1) for s in range(t + 1))


def chain_states(window: int) -> tuple[State, ...]:
    return tuple((t, 0) for t in range(window + 1))


class SparseOperator:
    """Exact rational linear map on a finite window of lattice states.

    Entries are kept as integers over one common positive denominator.
    ``leaky`` marks states whose true image left the window; their columns
    (when present) hold only the in-window part and are never used in
    compositions or zero assertions.
    """

    __slots__ = ("states", "den", "cols", "leaky", "_index")

    def __init__(self, states: tuple[State, ...], den: int,
                 cols: dict[State, dict[State, int]],
                 leaky: frozenset[State] = frozenset()):
        self.states = states
        self.den = den
        self.cols = cols
        self.leaky = leaky
        self._normalize()

    def _normalize(self):
        g = self.den
        for col in self.cols.values():
            for v in col.values():
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g == 1:
                break
        if g > 1:
            self.den //= g
            for col in self.cols.values():
                for k in col:
                    col[k] //= g
        for x in list(self.cols):
            col = self.cols[x]
            for y in [y for y, v in col.items() if v == 0]:
                del col[y]
            if not col:
                del self.cols[x]

    # -- constructors ----------------------------------------------------

    @staticmethod
    def identity(states: tuple[State, ...]) -> "SparseOperator":
        return SparseOperator(states, 1, {x: {x: 1} for x in states})

    @staticmethod
    def scalar(states: tuple[State, ...], value: Fraction) -> "SparseOperator":
        value = Fraction(value)
        if value == 0:
            return SparseOperator(states, 1, {})
        return SparseOperator(states, value.denominator,
                              {x: {x: value.numerator} for x in states})

    @staticmethod
    def linear_combination(states: tuple[State, ...],
                           parts) -> "SparseOperator":
        """Exact sum of (coefficient, operator) pairs in one pass."""
        parts = [(Fraction(c), op) for c, op in parts]
        den = 1
        for c, op in parts:
            d = op.den * c.denominator
            den = den * d // math.gcd(den, d)
        leaky = frozenset().union(*(op.leaky for _, op in parts)) \
            if parts else frozenset()
        cols: dict[State, dict[State, int]] = {}
        for c, op in parts:
            if not c:
                continue
            # entries are v/op.den; scale to the common denominator exactly
            f = c.numerator * (den // (op.den * c.denominator))
            for x, col in op.cols.items():
                if x in leaky:
                    continue
                dst = cols.setdefault(x, {})
                for y, v in col.items():
                    dst[y] = dst.get(y, 0) + v * f
        return SparseOperator(states, den, cols, leaky)

    # -- access -----------------------------------------------------------

    def reliable_states(self) -> tuple[State, ...]:
        return tuple(x for x in self.states if x not in self.leaky)

    def column(self, x: State) -> dict[State, Fraction]:
        return {y: Fraction(v, self.den) for y, v in self.cols.get(x, {}).items()}

    def entry(self, x: State, y: State) -> Fraction:
        return Fraction(self.cols.get(x, {}).get(y, 0), self.den)

    def is_zero_on_reliable(self) -> bool:
        return all(x in self.leaky or x not in self.cols for x in self.states)

    def witness(self):
        """First reliable state with a nonzero image, with that image."""
        for x in self.states:
            if x in self.leaky:
                continue
            col = self.cols.get(x)
            if col:
                return x, self.column(x)
        return None

    def is_diagonal_on_reliable(self) -> bool:
        return all(set(self.cols.get(x, {})) <= {x}
                   for x in self.states if x not in self.leaky)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        if self.states != other.states:
            raise AlgebraError("operators live on different windows")
        leaky = self.leaky | other.leaky
        den = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        cols: dict[State, dict[State, int]] = {}
        for x in self.states:
            if x in leaky:
                continue
            col: dict[State, int] = {}
            for y, v in self.cols.get(x, {}).items():
                col[y] = col.get(y, 0) + v * fa
            for y, v in other.cols.get(x, {}).items():
                col[y] = col.get(y, 0) + v * fb
            if col:
                cols[x] = col
        return SparseOperator(self.states, den, cols, frozenset(leaky))

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(
            self.states, self.den,
            {x: {y: -v for y, v in col.items()} for x, col in self.cols.items()},
            self.leaky)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-other)

    def __mul__(self, q) -> "SparseOperator":
        q = Fraction(q)
        cols = {x: {y: v * q.numerator for y, v in col.items()}
                for x, col in self.cols.items()}
        return SparseOperator(self.states, self.den * q.denominator, cols,
                              self.leaky)

    __rmul__ = __mul__

    def compose(self, other: "SparseOperator") -> "SparseOperator":
        """self after other (operator product: (self*other)|x> = self(other|x>))."""
        if self.states != other.states:
            raise AlgebraError("operators live on different windows")
        leaky = set(other.leaky)
        cols: dict[State, dict[State, int]] = {}
        for x in self.states:
            if x in leaky:
                continue
            mid = other.cols.get(x, {})
            if any(y in self.leaky for y in mid):
                leaky.add(x)
                continue
            col: dict[State, int] = {}
            for y, v in mid.items():
                for z, w in self.cols.get(y, {}).items():
                    col[z] = col.get(z, 0) + v * w
            if col:
                cols[x] = col
        return SparseOperator(self.states, self.den * other.den, cols,
                              frozenset(leaky))

    def apply(self, combo: dict[State, Fraction]) -> dict[State, Fraction] | None:
        """Image of a linear combination; None when any source state leaks."""
        out: dict[State, Fraction] = {}
        for x, c in combo.items():
            if x in self.leaky:
                return None
            for y, v in self.cols.get(x, {}).items():
                q = out.get(y, ZERO) + c * Fraction(v, self.den)
                if q:
                    out[y] = q
                elif y in out:
                    del out[y]
        return out


def commutator_op(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    return a.compose(b) - b.compose(a)


def build_operator(gen, p: RepParams, window: int,
                   states: tuple[State, ...] | None = None) -> SparseOperator:
    """Assemble one contiguous-basis generator over the window.

    The leak flag is set exactly on the states from which the raising
    stencils reach past t = window.
    """
    name = str(gen) if isinstance(gen, Gen) else str(gen)
    if states is None:
        states = triangle_states(window)
    ensure_valid(p, window)
    if name in _SCALARS:
        return SparseOperator.scalar(states, _SCALARS[name](p))
    if name not in _STENCILS:
        raise AlgebraError(
            f"{name} is not a contiguous-basis generator; decompose it first")
    stencil = _STENCILS[name]
    state_set = set(states)
    cols: dict[State, dict[State, Fraction]] = {}
    leaky = set()
    for (t, s) in states:
        col: dict[State, Fraction] = {}
        for (dt, ds), val in stencil(p, t, s).items():
            if not val:
                continue
            tt, ss = t + dt, s + ds
            if tt < 0 or ss < 0 or ss > tt:
                raise AssertionError(
                    f"lattice leak: {name} maps ({t},{s}) to ({tt},{ss}) "
                    f"with nonzero coefficient {val}")
            if (tt, ss) not in state_set:
                leaky.add((t, s))
                continue
            col[(tt, ss)] = val
        if col:
            cols[(t, s)] = col
    den = 1
    for col in cols.values():
        for v in col.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
    icols = {x: {y: int(v * den) for y, v in col.items()}
             for x, col in cols.items()}
    return SparseOperator(states, den, icols, frozenset(leaky))


# -- evaluation homomorphism ----------------------------------------------------

class OperatorContext:
    """Caches generator operators and evaluates polynomials over them.

    ``rank`` 4 uses the full triangular window, ``rank`` 3 the s=0 chain
    (the rank-1 slice).  Evaluation is homomorphic: products compose,
    sums add, and leak flags propagate so results are asserted only where
    exact.
    """

    def __init__(self, params: RepParams, window: int, rank: int = 4):
        if rank not in (3, 4):
            raise AlgebraError("operator window exists for 3 or 4 indices")
        ensure_valid(params, window)
        self.params = params
        self.window = window
        self.rank = rank
        self.states = triangle_states(window) if rank == 4 else chain_states(window)
        self._gen_ops: dict[str, SparseOperator] = {}
        self._word_ops: dict[tuple, SparseOperator] = {}
        self._poly_ops: dict[tuple, SparseOperator] = {}

    def op(self, gen: Gen) -> SparseOperator:
        name = str(gen)
        got = self._gen_ops.get(name)
        if got is None:
            got = build_operator(gen, self.params, self.window, self.states)
            self._gen_ops[name] = got
        return got

    def _word_op(self, word) -> SparseOperator:
        got = self._word_ops.get(word)
        if got is not None:
            return got
        if not word:
            out = SparseOperator.identity(self.states)
        else:
            out = self.op(word[0]).compose(self._word_op(word[1:]))
        self._word_ops[word] = out
        return out

    def eval(self, p: NCPoly) -> SparseOperator:
        """Evaluate any polynomial; non-contiguous letters are decomposed."""
        if p.rank != self.rank:
            p = NCPoly(self.rank, p.terms)  # relabel the ambient rank
        key = p.key()
        got = self._poly_ops.get(key)
        if got is not None:
            return got
        q = to_contiguous(p)
        parts = [(c, self._word_op(word)) for word, c in q.terms.items()]
        out = SparseOperator.linear_combination(self.states, parts)
        self._poly_ops[key] = out
        return out


def eval_poly(expr: NCPoly, p: RepParams, window: int) -> SparseOperator:
    """One-shot evaluation; reuse an OperatorContext for bulk work."""
    return OperatorContext(p, window, rank=4).eval(expr)


class Rank1Slice(NamedTuple):
    A: SparseOperator
    B: SparseOperator
    D: SparseOperator
    context: OperatorContext


def rank1_slice(p: RepParams, window: int) -> Rank1Slice:
    """The s = 0 chain: A acts east with raising coefficient exactly 1,
    B acts west, D is half their commutator."""
    ctx = OperatorContext(p, window, rank=3)
    A = ctx.eval(gen_C(3, (2, 3)))
    B = ctx.eval(gen_C(3, (1, 2)))
    D = Fraction(1, 2) * commutator_op(A, B)
    return Rank1Slice(A, B, D, ctx)


# -- standard parameter sets -----------------------------------------------------

DEFAULT_SEED = 8093


def integer_params() -> RepParams:
    return RepParams(Fraction(1), Fraction(1), Fraction(1), Fraction(1), Fraction(3))


def generic_params() -> RepParams:
    return RepParams(Fraction(1, 3), Fraction(1, 5), Fraction(2, 7),
                     Fraction(1, 2), Fraction(4))


def randomized_params(window: int = 12, seed: int = DEFAULT_SEED) -> RepParams:
    """A validated random rational parameter set (deterministic per seed)."""
    rng = random.Random(seed)
    while True:
        cs = []
        for _ in range(4):
            den = rng.choice((3, 5, 7, 11, 13))
            cs.append(Fraction(rng.randrange(1, den), den))
        p = RepParams(*cs, Fraction(rng.randrange(2, 6)))
        if not validate_params(p, window):
            return p


def default_param_sets(window: int = 12, seed: int = DEFAULT_SEED):
    """The three standard suites: small integer parameters on their widest
    valid window, a generic fraction set, and a seeded random set."""
    integer_window = 4
    return (
        ("integer", integer_params(), integer_window),
        ("generic", generic_params(), window),
        ("randomized", randomized_params(window, seed), window),
    )
