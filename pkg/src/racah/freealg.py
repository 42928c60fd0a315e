"""Exact noncommutative polynomial arithmetic and a terminating rewrite engine.

Polynomials are finite rational-linear combinations of words over an indexed
generator alphabet.  A rewrite system compiled from a relation catalog
normal-orders words; reduction to zero certifies that an element lies in the
two-sided ideal generated by the relations.  A nonzero normal form proves
nothing (the rule set is sound but not complete: no confluence claim).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction  # exact coefficients, always normalized, denominator > 0

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class AlgebraError(ValueError):
    """Malformed algebraic input (bad indices, unknown symbols...)."""


class RankMismatchError(AlgebraError):
    """Operands live over different ambient index ranges."""


class UnknownGeneratorError(AlgebraError):
    """A word contains a symbol the rewrite system has no ordering entry for."""


# Generator kinds.  Sort order: pair shift generators, then singleton shift
# generators, then half-commutator generators; everything else ("foreign"
# letters: subset generators and pentagon labels) sorts after the core and is
# eliminated by expansion rules before normal ordering starts.
_KIND_RANK = {"D": 2, "C": 3, "Om": 4, "om": 5, "Ga": 6}
_DEGREE = {"P": 1, "D": 2, "C": 1, "Om": 1, "om": 1, "Ga": 2}

CORE_KINDS = ("P", "D")


@dataclass(frozen=True)
class Gen:
    """A tagged generator symbol: kind plus canonical index payload.

    Canonicalization (index sorting, permutation signs, range checks) is the
    constructors' job, over in :mod:`racah.core`; this type is raw storage.
    """

    kind: str
    indices: tuple[int, ...]

    def sort_key(self) -> tuple:
        if self.kind == "P":
            # pairs before singletons, so singleton eliminations can see the
            # half-commutator block that follows them in a sorted word
            return (0 if len(self.indices) == 2 else 1, self.indices)
        return (_KIND_RANK[self.kind], self.indices)

    @property
    def degree(self) -> int:
        return _DEGREE[self.kind]

    def __str__(self) -> str:
        return self.kind + "".join(str(i) for i in self.indices)

    def __repr__(self) -> str:
        return f"Gen({str(self)!r})"


Word = tuple[Gen, ...]


def _clean(terms: dict) -> dict:
    return {w: c for w, c in terms.items() if c}


@dataclass(frozen=True, eq=False)
class NCPoly:
    """Finite map word -> rational, the universal carrier for algebra elements.

    Immutable after construction; all arithmetic is exact.
    """

    rank: int
    terms: Mapping[Word, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "terms", _clean(dict(self.terms)))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(rank: int) -> "NCPoly":
        return NCPoly(rank, {})

    @staticmethod
    def const(rank: int, value) -> "NCPoly":
        return NCPoly(rank, {(): Fraction(value)})

    @staticmethod
    def one(rank: int) -> "NCPoly":
        return NCPoly.const(rank, 1)

    @staticmethod
    def from_word(rank: int, word: Iterable[Gen], coeff=1) -> "NCPoly":
        return NCPoly(rank, {tuple(word): Fraction(coeff)})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(g.degree for g in w) for w in self.terms)

    def coeff(self, word: Word) -> Fraction:
        return self.terms.get(tuple(word), ZERO)

    def gens(self) -> set[Gen]:
        out: set[Gen] = set()
        for w in self.terms:
            out.update(w)
        return out

    # -- arithmetic --------------------------------------------------------

    def _require_same_rank(self, other: "NCPoly"):
        if self.rank != other.rank:
            raise RankMismatchError(
                f"rank {self.rank} vs rank {other.rank} operands"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.const(self.rank, other)
        self._require_same_rank(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            q = out.get(w, ZERO) + c
            if q:
                out[w] = q
            elif w in out:
                del out[w]
        return NCPoly(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.const(self.rank, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return NCPoly(self.rank, {w: c * q for w, c in self.terms.items()})
        self._require_same_rank(other)
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                q = out.get(w, ZERO) + c1 * c2
                if q:
                    out[w] = q
                elif w in out:
                    del out[w]
        return NCPoly(self.rank, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("exponent must be a nonnegative integer")
        out = NCPoly.one(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.const(self.rank, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def substitute(self, image) -> "NCPoly":
        """Extend a letter map Gen -> NCPoly to an algebra homomorphism."""
        out = NCPoly.zero(self.rank)
        for w, c in self.terms.items():
            part = NCPoly.const(self.rank, c)
            for g in w:
                part = part * image(g)
            out = out + part
        return out

    def key(self) -> tuple:
        """Canonical hashable content, for table lookups and determinism."""
        return (self.rank, tuple(sorted(self.terms.items(),
                                        key=lambda it: _word_key(it[0]))))

    def __str__(self) -> str:
        return format_poly(self)

    __repr__ = __str__


def _word_key(w: Word) -> tuple:
    return (len(w), tuple(g.sort_key() for g in w))


# -- spec-level operation names ---------------------------------------------

def poly_add(a: NCPoly, b: NCPoly) -> NCPoly:
    return a + b


def poly_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    """ab - ba."""
    return a * b - b * a


def anticommutator(a: NCPoly, b: NCPoly) -> NCPoly:
    """ab + ba."""
    return a * b + b * a


def jacobi_defect(a: NCPoly, b: NCPoly, c: NCPoly) -> NCPoly:
    """[a,[b,c]] + [b,[c,a]] + [c,[a,b]], expanded in the free algebra.

    Identically zero for any associative inputs; the interesting variant
    substitutes catalog commutator values first (see the verifier).
    """
    return (commutator(a, commutator(b, c))
            + commutator(b, commutator(c, a))
            + commutator(c, commutator(a, b)))


def reduce(p: "NCPoly", rs: "RewriteSystem") -> "NCPoly":
    """Normal form of ``p`` under ``rs``; zero certifies ideal membership."""
    return rs.reduce(p)


# -- printing ----------------------------------------------------------------

def format_coeff(q: Fraction) -> str:
    return str(q)


def format_word(w: Word) -> str:
    return "*".join(str(g) for g in w)


def format_poly(p: NCPoly) -> str:
    if p.is_zero:
        return "0"
    bits = []
    for w, c in sorted(p.terms.items(), key=lambda it: _word_key(it[0])):
        if not w:
            body = format_coeff(abs(c))
        elif abs(c) == 1:
            body = format_word(w)
        else:
            body = f"{format_coeff(abs(c))}*{format_word(w)}"
        bits.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(bits)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# -- rewrite engine -----------------------------------------------------------

@dataclass(frozen=True)
class RewriteRule:
    """One oriented rule: a length-1 or length-2 word and its replacement.

    ``grade_drop`` names the component of the termination measure
    (foreign letters, degree, length, singleton count, inversions) that every
    replacement word strictly drops below the matched word; the engine
    re-checks the drop at every application.
    """

    lhs: Word
    rhs: NCPoly
    name: str       # "swap" | "expand" | "eliminate"
    grade_drop: str


def inversions(seq) -> int:
    n = len(seq)
    return sum(1 for i in range(n) for j in range(i + 1, n) if seq[i] > seq[j])


class RewriteSystem:
    """An ordered, terminating set of word-rewrite rules.

    ``reduce`` repeatedly applies the leftmost applicable rule:

    * foreign letters (subset generators, pentagon labels) expand into the
      core alphabet of shift and half-commutator generators;
    * adjacent out-of-order core pairs swap, emitting the catalog commutator;
    * a singleton shift generator whose index misses some half-commutator
      letter anywhere in the word is eliminated through the sum identity that
      couples it to three pair-times-half-commutator words.  Singletons are
      central, so the match does not need adjacency.

    Every application strictly decreases the measure (foreign letters, total
    degree, word length, singleton count, word read lexicographically)
    lexicographically; this is asserted per step.  Zero normal form == ideal
    membership; anything else is inconclusive.
    """

    def __init__(self, rank: int, alphabet: Iterable[Gen],
                 rules: Iterable[RewriteRule]):
        self.rank = rank
        self.rules = tuple(rules)
        gens = sorted(set(alphabet), key=Gen.sort_key)
        self._gen2id = {g: i for i, g in enumerate(gens)}
        self._id2gen = gens
        self._deg = [g.degree for g in gens]
        self._foreign = {i for i, g in enumerate(gens) if g.kind not in CORE_KINDS}
        self._single = {i for i, g in enumerate(gens)
                        if g.kind == "P" and len(g.indices) == 1}
        self._single_index = {i: gens[i].indices[0] for i in self._single}
        self._half = {i: frozenset(gens[i].indices) for i, g in enumerate(gens)
                      if g.kind == "D"}
        self._expand: dict[int, dict] = {}
        self._swap: dict[tuple[int, int], dict] = {}
        self._elim: dict[tuple[int, int], dict] = {}
        for rule in self.rules:
            ids = tuple(self._gen2id[g] for g in rule.lhs)
            body = self._intern(rule.rhs)
            if len(ids) == 1:
                self._expand[ids[0]] = body
            elif rule.name == "eliminate":
                self._elim[ids] = body
            else:
                self._swap[ids] = body
        # memo of word -> normal form; value-identical results regardless of
        # call interleaving, so sharing between threads only wastes work
        self._nf: dict[tuple, dict] = {}
        self._steps = 0

    # -- plumbing ---------------------------------------------------------

    def _intern(self, p: NCPoly) -> dict:
        out = {}
        for w, c in p.terms.items():
            out[tuple(self._gen2id[g] for g in w)] = c
        return out

    def _extern(self, terms: dict) -> NCPoly:
        gens = self._id2gen
        return NCPoly(self.rank,
                      {tuple(gens[i] for i in w): c for w, c in terms.items()})

    def degree(self, g: Gen) -> int:
        return g.degree

    def generator_order(self, g: Gen) -> int:
        try:
            return self._gen2id[g]
        except KeyError:
            raise UnknownGeneratorError(f"no ordering entry for {g}") from None

    def measure(self, word: Word) -> tuple:
        return self._measure(tuple(self.generator_order(g) for g in word))

    def _measure(self, w: tuple) -> tuple:
        # the final component makes this a total order on words, so any
        # sound identity can be oriented toward its largest word; a swap
        # already drops it (the smaller letter moves left)
        return (sum(1 for i in w if i in self._foreign),
                sum(self._deg[i] for i in w),
                len(w),
                sum(1 for i in w if i in self._single),
                w)

    @property
    def steps(self) -> int:
        """Total rule applications performed by this system so far."""
        return self._steps

    # -- redex search / application ----------------------------------------

    def _find_redex(self, w: tuple):
        n = len(w)
        for p in range(n):
            if w[p] in self._expand:
                return ("x", p)
            if p + 1 < n and (w[p], w[p + 1]) in self._swap:
                return ("s", p)
        for p in range(n):
            if w[p] in self._single:
                i = self._single_index[w[p]]
                for q in range(n):
                    hs = self._half.get(w[q])
                    if hs is not None and i not in hs and (w[p], w[q]) in self._elim:
                        return ("e", p, q)
        return None

    def _apply(self, w: tuple, redex) -> list:
        kind = redex[0]
        if kind == "x":
            p = redex[1]
            body = self._expand[w[p]]
            return [(w[:p] + rw + w[p + 1:], c) for rw, c in body.items()]
        if kind == "s":
            p = redex[1]
            body = self._swap[(w[p], w[p + 1])]
            return [(w[:p] + rw + w[p + 2:], c) for rw, c in body.items()]
        _, p, q = redex
        body = self._elim[(w[p], w[q])]
        out = []
        for rw, c in body.items():
            if p < q:
                nw = w[:p] + w[p + 1:q] + rw + w[q + 1:]
            else:
                nw = w[:q] + rw + w[q + 1:p] + w[p + 1:]
            out.append((nw, c))
        return out

    # -- reduction ----------------------------------------------------------

    def _normal_form(self, word: tuple) -> dict:
        nf = self._nf
        got = nf.get(word)
        if got is not None:
            return got
        stack = [word]
        pending: dict[tuple, list] = {}
        while stack:
            w = stack[-1]
            if w in nf:
                stack.pop()
                continue
            kids = pending.get(w)
            if kids is None:
                redex = self._find_redex(w)
                if redex is None:
                    nf[w] = {w: ONE}
                    stack.pop()
                    continue
                kids = self._apply(w, redex)
                mw = self._measure(w)
                for kw, _ in kids:
                    mk = self._measure(kw)
                    if not mk < mw:
                        raise AssertionError(
                            f"termination measure did not drop: {mw} -> {mk}")
                self._steps += 1
                pending[w] = kids
            missing = [kw for kw, _ in kids if kw not in nf]
            if missing:
                stack.extend(missing)
                continue
            acc: dict[tuple, Fraction] = {}
            for kw, c in kids:
                for w2, c2 in nf[kw].items():
                    q = acc.get(w2, ZERO) + c * c2
                    if q:
                        acc[w2] = q
                    elif w2 in acc:
                        del acc[w2]
            nf[w] = acc
            del pending[w]
            stack.pop()
        return nf[word]

    def reduce(self, p: NCPoly) -> NCPoly:
        """A normal form of ``p``.  Zero certifies ideal membership."""
        if p.rank != self.rank:
            raise RankMismatchError(
                f"poly of rank {p.rank} fed to rank-{self.rank} system")
        acc: dict[tuple, Fraction] = {}
        for w, c in p.terms.items():
            iw = tuple(self.generator_order(g) for g in w)
            for w2, c2 in self._normal_form(iw).items():
                q = acc.get(w2, ZERO) + c * c2
                if q:
                    acc[w2] = q
                elif w2 in acc:
                    del acc[w2]
        return self._extern(acc)

    def reduce_with_stats(self, p: NCPoly) -> tuple[NCPoly, int]:
        before = self._steps
        out = self.reduce(p)
        return out, self._steps - before

    def reduces_to_zero(self, p: NCPoly) -> bool:
        return self.reduce(p).is_zero

    # -- termination bookkeeping --------------------------------------------

    def max_rule_width(self) -> int:
        width = 1
        for rule in self.rules:
            width = max(width, len(rule.rhs.terms))
        return width

    def step_bound(self, p: NCPoly) -> int:
        """A computable ceiling on the rule applications reduce(p) can take.

        Rewriting never increases a word's total degree, and degree bounds
        length once the (finitely many) foreign letters are expanded, so
        every word reachable from ``p`` has length at most
        max(length, degree) over p's words.  The engine resolves each
        distinct word at most once (results are memoized), so the count of
        words up to that length over the alphabet bounds the steps.
        """
        if p.is_zero:
            return 0
        cap = max(max(len(w), sum(g.degree for g in w)) for w in p.terms)
        n = len(self._id2gen)
        return sum(n ** l for l in range(cap + 1))
