"""Pentagon dihedral action, index permutation action, expression transport,
invariance checking, and the combined-group closure computation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    OMEGA_SETS,
    SMALL_OMEGA_SETS,
    decompose_to_basis,
    d_poly,
    expand_to_C,
    gen_C,
    rewrite_system,
)
from .freealg import AlgebraError, Gen, NCPoly


@dataclass(frozen=True)
class DihedralElement:
    """One symmetry of the pentagon: label i maps to shift - i under a
    reflection, to i + shift otherwise (all mod 5)."""

    reflected: bool
    shift: int

    def __post_init__(self):
        object.__setattr__(self, "shift", self.shift % 5)

    @staticmethod
    def identity() -> "DihedralElement":
        return DihedralElement(False, 0)

    @staticmethod
    def rotation(k: int) -> "DihedralElement":
        return DihedralElement(False, k)

    @staticmethod
    def reflection(axis: int) -> "DihedralElement":
        # fixes the vertex at `axis` and its opposite edge
        return DihedralElement(True, 2 * axis)

    @property
    def rotation_amount(self) -> int:
        return self.shift

    @property
    def axis(self) -> int:
        if not self.reflected:
            raise AlgebraError("a rotation has no reflection axis")
        return (3 * self.shift) % 5  # vertex a with 2a = shift (mod 5)

    def apply(self, i: int) -> int:
        return (self.shift - i) % 5 if self.reflected else (i + self.shift) % 5

    @property
    def gamma_sign(self) -> int:
        return -1 if self.reflected else 1

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        """self after other."""
        if self.reflected:
            return DihedralElement(not other.reflected, self.shift - other.shift)
        return DihedralElement(other.reflected, self.shift + other.shift)

    @staticmethod
    def all_elements() -> tuple["DihedralElement", ...]:
        return tuple(DihedralElement(r, k) for r in (False, True) for k in range(5))

    def __str__(self) -> str:
        if self.reflected:
            return f"refl{self.axis}"
        return f"rot{self.shift}"


@dataclass(frozen=True)
class IndexPermutation:
    """A permutation of {1..n}, stored as the image tuple of (1, ..., n)."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise AlgebraError(f"not a permutation of 1..n: {self.images}")

    @staticmethod
    def identity(n: int) -> "IndexPermutation":
        return IndexPermutation(tuple(range(1, n + 1)))

    @staticmethod
    def transposition(n: int, a: int, b: int) -> "IndexPermutation":
        im = list(range(1, n + 1))
        im[a - 1], im[b - 1] = b, a
        return IndexPermutation(tuple(im))

    @staticmethod
    def all_elements(n: int):
        return tuple(IndexPermutation(p)
                     for p in itertools.permutations(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def apply(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "IndexPermutation") -> "IndexPermutation":
        """self after other."""
        return IndexPermutation(tuple(self.apply(other.apply(i))
                                      for i in range(1, self.n + 1)))

    def __str__(self) -> str:
        return "".join(str(i) for i in self.images)


# -- the dihedral action on subset generators ------------------------------------

_ALL_SUBSETS_4 = tuple(tuple(s) for r in range(1, 5)
                       for s in itertools.combinations((1, 2, 3, 4), r))

_PENTAGON_OF_SET = ({v: ("Om", k) for k, v in OMEGA_SETS.items()}
                    | {v: ("om", k) for k, v in SMALL_OMEGA_SETS.items()})
_SET_OF_PENTAGON = {v: k for k, v in _PENTAGON_OF_SET.items()}


def _decomp_key(I: tuple[int, ...]) -> tuple:
    poly = decompose_to_basis(4, I)
    return tuple(sorted((w[0].indices, c) for w, c in poly.terms.items()))


_KEY_TO_SET = {_decomp_key(I): I for I in _ALL_SUBSETS_4}


def dihedral_subset_map(g: DihedralElement) -> dict[tuple, tuple]:
    """How a pentagon symmetry permutes all 15 subset generators.

    Contiguous sets move by their pentagon label; the rest follow by
    linearity of the decomposition and always land on a single generator
    again (checked by the lookup).
    """
    base: dict[tuple, tuple] = {}
    for I in _ALL_SUBSETS_4:
        if I in _PENTAGON_OF_SET:
            kind, k = _PENTAGON_OF_SET[I]
            base[I] = _SET_OF_PENTAGON[(kind, g.apply(k))]
    out = dict(base)
    for I in _ALL_SUBSETS_4:
        if I in out:
            continue
        poly = decompose_to_basis(4, I)
        image = NCPoly(4, {(Gen("C", base[w[0].indices]),): c
                           for w, c in poly.terms.items()})
        out[I] = _KEY_TO_SET[tuple(sorted((w[0].indices, c)
                                          for w, c in image.terms.items()))]
    return out


def signed_generator_map(g: DihedralElement) -> dict[Gen, tuple[Gen, int]]:
    """Letter images with their signs: bijective on the subset generators,
    sign-flipping on the commutator labels under reflections."""
    out: dict[Gen, tuple[Gen, int]] = {}
    for I, J in dihedral_subset_map(g).items():
        out[Gen("C", I)] = (Gen("C", J), 1)
    for k in range(5):
        out[Gen("Om", (k,))] = (Gen("Om", (g.apply(k),)), 1)
        out[Gen("om", (k,))] = (Gen("om", (g.apply(k),)), 1)
        out[Gen("Ga", (k,))] = (Gen("Ga", (g.apply(k),)), g.gamma_sign)
    return out


def act_dihedral(g: DihedralElement, p: NCPoly) -> NCPoly:
    """Transport an expression along a pentagon symmetry.

    Pentagon labels and subset generators map by label substitution (with
    the commutator-label sign rule); shift and half-commutator letters are
    first rewritten as subset words.
    """
    if p.rank != 4:
        raise AlgebraError("the pentagon action needs exactly 4 indices")
    table = signed_generator_map(g)
    if any(w and any(x.kind in ("P", "D") for x in w) for w in p.terms):
        p = expand_to_C(p)

    def image(x: Gen) -> NCPoly:
        try:
            y, sign = table[x]
        except KeyError:
            raise AlgebraError(f"no pentagon image for letter {x}") from None
        return NCPoly.from_word(4, (y,), sign)

    return p.substitute(image)


def act_permutation(sigma: IndexPermutation, p: NCPoly) -> NCPoly:
    """Relabel every index payload; half-commutator letters pick up the
    permutation-parity sign.  Pentagon labels are not index-indexed: expand
    them first."""

    def image(x: Gen) -> NCPoly:
        if x.kind == "C":
            return gen_C(p.rank, tuple(sigma.apply(i) for i in x.indices))
        if x.kind == "P":
            idx = tuple(sorted(sigma.apply(i) for i in x.indices))
            return NCPoly.from_word(p.rank, (Gen("P", idx),))
        if x.kind == "D":
            return d_poly(p.rank, *(sigma.apply(i) for i in x.indices))
        raise AlgebraError(
            f"letter {x} carries no index payload; expand it before relabeling")

    return p.substitute(image)


# -- closure of the combined action ------------------------------------------------

def _perm_of_subsets(fn) -> tuple[int, ...]:
    pos = {I: k for k, I in enumerate(_ALL_SUBSETS_4)}
    return tuple(pos[fn(I)] for I in _ALL_SUBSETS_4)


def dihedral_perm15(g: DihedralElement) -> tuple[int, ...]:
    table = dihedral_subset_map(g)
    return _perm_of_subsets(lambda I: table[I])


def permutation_perm15(sigma: IndexPermutation) -> tuple[int, ...]:
    return _perm_of_subsets(lambda I: tuple(sorted(sigma.apply(i) for i in I)))


def _mulclose(gens: set[tuple[int, ...]]) -> set[tuple[int, ...]]:
    els = set(gens)
    boundary = list(els)
    while boundary:
        new = []
        for a in gens:
            for b in boundary:
                c = tuple(a[i] for i in b)
                if c not in els:
                    els.add(c)
                    new.append(c)
        boundary = new
    return els


def dihedral_group_order() -> int:
    return len(_mulclose({dihedral_perm15(DihedralElement.rotation(1)),
                          dihedral_perm15(DihedralElement.reflection(0))}))


def permutation_group_order() -> int:
    gens = {permutation_perm15(IndexPermutation.transposition(4, a, a + 1))
            for a in (1, 2, 3)}
    return len(_mulclose(gens))


def closure_order() -> int:
    """Order of the group the two actions generate on the 15 subset
    generators (the commutator-label signs ride along separately)."""
    gens = {dihedral_perm15(DihedralElement.rotation(1)),
            dihedral_perm15(DihedralElement.reflection(0))}
    gens |= {permutation_perm15(IndexPermutation.transposition(4, a, a + 1))
             for a in (1, 2, 3)}
    return len(_mulclose(gens))


def orbit(symbol: Gen, group: str) -> list[str]:
    """Orbit of a subset or pentagon generator under d5, p4, or both."""
    if symbol.kind == "Ga":
        raise AlgebraError("commutator labels have sign-valued orbits; "
                           "track them through signed_generator_map")
    if symbol.kind in ("Om", "om"):
        start = _SET_OF_PENTAGON[(symbol.kind, symbol.indices[0])]
    else:
        start = symbol.indices
    perms: set[tuple[int, ...]] = set()
    if group in ("d5", "both"):
        perms |= {dihedral_perm15(DihedralElement.rotation(1)),
                  dihedral_perm15(DihedralElement.reflection(0))}
    if group in ("p4", "both"):
        perms |= {permutation_perm15(IndexPermutation.transposition(4, a, a + 1))
                  for a in (1, 2, 3)}
    if not perms:
        raise AlgebraError(f"unknown group {group!r}; use d5, p4 or both")
    pos = {I: k for k, I in enumerate(_ALL_SUBSETS_4)}
    seen = {pos[start]}
    frontier = [pos[start]]
    while frontier:
        new = []
        for k in frontier:
            for perm in perms:
                j = perm[k]
                if j not in seen:
                    seen.add(j)
                    new.append(j)
        frontier = new
    return sorted("C" + "".join(str(i) for i in _ALL_SUBSETS_4[k]) for k in seen)


# -- invariance of relation suites ---------------------------------------------------

@dataclass(frozen=True)
class InvarianceRecord:
    element: str
    relation: str
    outcome: str   # "matched +<id>", "matched -<id>", or "reduces-to-zero"
    ok: bool


def verify_relation_invariance(group: str, suite) -> list[InvarianceRecord]:
    """Check that every group image of every suite relation is (plus or
    minus) another suite relation after canonicalization, or at least
    reduces to zero.  ``suite`` is a list of (label, NCPoly) pairs."""
    if group == "D5":
        elements = [(str(g), ("d5", g)) for g in DihedralElement.all_elements()]
    elif group == "P4":
        elements = [(str(s), ("p4", s)) for s in IndexPermutation.all_elements(4)]
    else:
        raise AlgebraError(f"unknown group {group!r}")

    table: dict[tuple, str] = {}
    for label, poly in suite:
        table.setdefault(poly.key(), f"+{label}")
        table.setdefault((-poly).key(), f"-{label}")

    rs = rewrite_system(4)
    records = []
    for name, (kind, element) in elements:
        for label, poly in suite:
            if kind == "d5":
                img = act_dihedral(element, poly)
            else:
                img = act_permutation(element, expand_to_C(poly))
            hit = table.get(img.key())
            if hit is None and kind == "p4":
                # compare in the subset alphabet as well
                hit = table.get(expand_to_C(img).key())
            if hit is not None:
                records.append(InvarianceRecord(name, label, f"matched {hit}", True))
            elif rs.reduce(img).is_zero:
                records.append(InvarianceRecord(name, label, "reduces-to-zero", True))
            else:
                records.append(InvarianceRecord(name, label, "NO MATCH", False))
    return records
