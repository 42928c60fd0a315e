"""Suite runner: enumerates relation instances, runs symbolic reductions and
representation evaluations, mechanizes the double-commutator checks, and
emits deterministic structured reports.

Two-method policy: a symbolic reduction to zero is authoritative; the
representation is the falsifier and the fallback for inconclusive
reductions.  A FAILED representation record on a reliable state is a hard
error; a nonzero normal form alone is merely inconclusive.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import symmetry
from .core import (
    CONTIGUOUS,
    PENTAGON_FAMILIES,
    RankConfig,
    RelationId,
    anchor,
    casimir_frak,
    casimir_rank1,
    catalog_commutator,
    d_poly,
    enumerate_relations,
    gen_C,
    presentation_rank1,
    relation,
    rewrite_system,
)
from .freealg import AlgebraError, Gen, NCPoly, commutator
from .representation import (
    OperatorContext,
    RepParams,
    SparseOperator,
    default_param_sets,
    rank1_slice,
    validate_params,
)


class ConfigError(AlgebraError):
    pass


SUITE_NAMES = ("definitions", "theorem_bigthm", "theorem_rn", "lemmas",
               "pentagon", "casimirs", "jacobi", "symmetry", "rank1")

_SUITE_FAMILIES = {
    "definitions": ("central", "decomposition", "quad"),
    "theorem_bigthm": ("ddef", "inner_P", "outer_P", "dd", "pdt"),
    "theorem_rn": ("dd_one_overlap", "dd_disjoint"),
    "lemmas": ("d_cyclic", "quadB", "pd_pair", "outer_P", "dd",
               "pd_flip", "pd_exchange", "pd_cycle", "pd_sum"),
    "pentagon": PENTAGON_FAMILIES,
    "rank1": ("pres_rank1",),
}

PROVED = "proved-zero"
ONWINDOW = "zero-on-window"
INCONCLUSIVE = "inconclusive"
FAILED = "FAILED"


@dataclass(frozen=True)
class SuiteConfig:
    rank: int
    param_sets: tuple = ()          # (name, RepParams, window) triples
    suites: tuple = SUITE_NAMES
    fmt: str = "json"

    def __post_init__(self):
        RankConfig(self.rank)
        for s in self.suites:
            if s not in SUITE_NAMES:
                raise ConfigError(f"unknown suite {s!r}")
        for name, params, window in self.param_sets:
            errs = validate_params(params, window)
            if errs:
                raise ConfigError(
                    f"parameter set {name!r} invalid at window {window}: "
                    + "; ".join(errs))


@dataclass(frozen=True)
class InstanceRecord:
    suite: str
    family: str
    payload: str
    anchor: str
    method: str      # "symbolic-reduce" or "representation-eval"
    context: str     # parameter-set name for representation records
    status: str
    witness: str = ""

    def sort_key(self):
        return (self.suite, self.family, self.payload, self.method, self.context)


@dataclass
class VerificationReport:
    rank: int
    suites: tuple
    param_sets: tuple
    records: list = field(default_factory=list)

    def add(self, *args, **kw):
        self.records.append(InstanceRecord(*args, **kw))

    def finish(self) -> "VerificationReport":
        self.records.sort(key=InstanceRecord.sort_key)
        return self

    def summary(self) -> dict:
        out = {PROVED: 0, ONWINDOW: 0, INCONCLUSIVE: 0, FAILED: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(r.status == FAILED for r in self.records)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0


def _witness_text(op: SparseOperator) -> str:
    w = op.witness()
    if w is None:
        return ""
    state, combo = w
    parts = [f"{c}|{y[0]},{y[1]}>" for y, c in sorted(combo.items())]
    return f"state |{state[0]},{state[1]}> -> " + " + ".join(parts)


class _Runner:
    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.report = VerificationReport(
            cfg.rank, tuple(cfg.suites),
            tuple((name, p.describe(), w) for name, p, w in cfg.param_sets))
        self.rs = rewrite_system(cfg.rank)
        self.contexts = [(name, OperatorContext(p, w, rank=4))
                         for name, p, w in cfg.param_sets] if cfg.rank <= 4 else []
        self.chain_contexts = [(name, p, w) for name, p, w in cfg.param_sets]

    # -- generic relation handling ------------------------------------------

    def relation_instance(self, suite: str, rid: RelationId,
                          symbolic: bool = True, in_rep: bool = True):
        poly = relation(rid)
        if symbolic:
            status = PROVED if self.rs.reduce(poly).is_zero else INCONCLUSIVE
            self.report.add(suite, rid.family, rid.payload(), anchor(rid.family),
                            "symbolic-reduce", "", status)
        if in_rep:
            for name, ctx in self.contexts:
                op = ctx.eval(poly)
                if op.is_zero_on_reliable():
                    self.report.add(suite, rid.family, rid.payload(),
                                    anchor(rid.family), "representation-eval",
                                    name, ONWINDOW)
                else:
                    self.report.add(suite, rid.family, rid.payload(),
                                    anchor(rid.family), "representation-eval",
                                    name, FAILED, _witness_text(op))

    def family_suite(self, suite: str):
        rank = self.cfg.rank
        in_rep = rank <= 4 and bool(self.contexts)
        for family in _SUITE_FAMILIES[suite]:
            if family in PENTAGON_FAMILIES and rank != 4:
                continue
            for rid in enumerate_relations(rank, family):
                self.relation_instance(suite, rid, in_rep=in_rep)

    # -- special suites -------------------------------------------------------

    def pentagon_suite(self):
        if self.cfg.rank != 4:
            return
        self.family_suite("pentagon")
        suite = []
        for family in PENTAGON_FAMILIES:
            for rid in enumerate_relations(4, family):
                suite.append((f"{family}[{rid.payload()}]", relation(rid)))
        for group in ("D5", "P4"):
            recs = symmetry.verify_relation_invariance(group, suite)
            bad = [r for r in recs if not r.ok]
            self.report.add(
                "pentagon", f"invariance-{group.lower()}", f"{len(recs)} images",
                "group images of each relation stay inside the relation suite",
                "symbolic-reduce", "",
                FAILED if bad else PROVED,
                "; ".join(f"{r.element} x {r.relation}" for r in bad[:3]))
        order = symmetry.closure_order()
        self.report.add(
            "pentagon", "closure", f"order={order}",
            "the two symmetry actions together generate a group of order 120",
            "symbolic-reduce", "", PROVED if order == 120 else FAILED)

    def casimir_suite(self):
        if self.cfg.rank < 3:
            return
        cas = casimir_rank1(self.cfg.rank)
        partners = (("C12", gen_C(self.cfg.rank, (1, 2))),
                    ("C23", gen_C(self.cfg.rank, (2, 3))),
                    ("D123", d_poly(self.cfg.rank, 1, 2, 3)))
        for label, g in partners:
            poly = commutator(cas, g)
            if self.rs.reduce(poly).is_zero:
                self.report.add("casimirs", "casimir_rank1_comm", label,
                                "the quartic central element commutes with the"
                                " non-central generators",
                                "symbolic-reduce", "", PROVED)
            else:
                for name, ctx in self.contexts:
                    op = ctx.eval(poly)
                    ok = op.is_zero_on_reliable()
                    self.report.add("casimirs", "casimir_rank1_comm", label,
                                    "the quartic central element commutes with"
                                    " the non-central generators",
                                    "representation-eval", name,
                                    ONWINDOW if ok else FAILED,
                                    "" if ok else _witness_text(op))
        for name, ctx in self.contexts:
            op = ctx.eval(cas)
            ok = op.is_zero_on_reliable()
            self.report.add("casimirs", "casimir_rank1_zero", "c",
                            "the central element vanishes in this module",
                            "representation-eval", name,
                            ONWINDOW if ok else FAILED,
                            "" if ok else _witness_text(op))
        if self.cfg.rank != 4:
            return
        for i in range(5):
            ci = casimir_frak(i)
            for name, ctx in self.contexts:
                op = ctx.eval(ci)
                ok = op.is_zero_on_reliable()
                self.report.add("casimirs", "casimir_pentagon_zero", str(i),
                                "all five pentagon central elements vanish",
                                "representation-eval", name,
                                ONWINDOW if ok else FAILED,
                                "" if ok else _witness_text(op))
                Ei = ctx.eval(ci)
                for sset in CONTIGUOUS[4]:
                    g = ctx.eval(gen_C(4, sset))
                    comm = Ei.compose(g) - g.compose(Ei)
                    ok = comm.is_zero_on_reliable()
                    lbl = "C" + "".join(str(x) for x in sset)
                    self.report.add("casimirs", "casimir_pentagon_comm",
                                    f"{i},{lbl}",
                                    "each pentagon central element commutes"
                                    " with the ten basis generators",
                                    "representation-eval", name,
                                    ONWINDOW if ok else FAILED,
                                    "" if ok else _witness_text(comm))

    def rank1_suite(self):
        self.family_suite("rank1")
        for name, p, w in self.chain_contexts:
            sl = rank1_slice(p, w)
            ok = sl.A.entry((0, 0), (1, 0)) == 1
            self.report.add("rank1", "raising_normalized", "A",
                            "the east coefficient of the first generator is 1",
                            "representation-eval", name,
                            ONWINDOW if ok else FAILED)
            rels, _ = presentation_rank1(3)
            for k, r in enumerate(rels):
                op = sl.context.eval(r)
                ok = op.is_zero_on_reliable()
                self.report.add("rank1", "presentation_slice", str(k),
                                anchor("pres_rank1"),
                                "representation-eval", name,
                                ONWINDOW if ok else FAILED,
                                "" if ok else _witness_text(op))
            op = sl.context.eval(casimir_rank1(3))
            ok = op.is_zero_on_reliable()
            self.report.add("rank1", "casimir_slice", "c",
                            "the central element vanishes on the chain",
                            "representation-eval", name,
                            ONWINDOW if ok else FAILED,
                            "" if ok else _witness_text(op))

    # -- double-commutator checks ----------------------------------------------

    def jacobi_suite(self):
        run_jacobi(self.cfg.rank, self.report, self.contexts)

    def symmetry_suite(self):
        if self.cfg.rank != 4:
            return
        for label, order, want in (("d5", symmetry.dihedral_group_order(), 10),
                                   ("p4", symmetry.permutation_group_order(), 24),
                                   ("combined", symmetry.closure_order(), 120)):
            self.report.add("symmetry", "group_order", f"{label}={order}",
                            "pentagon action order 10, relabeling order 24,"
                            " combined order 120",
                            "symbolic-reduce", "",
                            PROVED if order == want else FAILED)

    def run(self) -> VerificationReport:
        for suite in self.cfg.suites:
            if suite in ("definitions", "theorem_bigthm", "theorem_rn", "lemmas"):
                self.family_suite(suite)
            elif suite == "pentagon":
                self.pentagon_suite()
            elif suite == "casimirs":
                self.casimir_suite()
            elif suite == "rank1":
                self.rank1_suite()
            elif suite == "jacobi":
                self.jacobi_suite()
            elif suite == "symmetry":
                self.symmetry_suite()
        return self.report.finish()


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    return _Runner(cfg).run()


# -- double-commutator machinery ---------------------------------------------------

def core_generators(rank: int) -> list[Gen]:
    idx = range(1, rank + 1)
    out = [Gen("P", (i,)) for i in idx]
    out += [Gen("P", t) for t in itertools.combinations(idx, 2)]
    out += [Gen("D", t) for t in itertools.combinations(idx, 3)]
    return out


def substituted_defect(rank: int, a: Gen, b: Gen, c: Gen) -> NCPoly:
    """The cyclic double-commutator sum with the inner commutators replaced
    by their catalog values; zero in the quotient iff the catalog is
    consistent with associativity for this triple."""
    pa, pb, pc = (NCPoly.from_word(rank, (g,)) for g in (a, b, c))
    kbc = catalog_commutator(rank, b, c)
    kca = catalog_commutator(rank, c, a)
    kab = catalog_commutator(rank, a, b)
    return ((pa * kbc - kbc * pa) + (pb * kca - kca * pb)
            + (pc * kab - kab * pc))


def triple_case(a: Gen, b: Gen, c: Gen) -> str:
    """Overlap-pattern label for a generator triple (names the special
    two-half-commutator shapes explicitly)."""
    kinds = sorted(g.kind + str(len(g.indices)) for g in (a, b, c))
    ds = [g for g in (a, b, c) if g.kind == "D"]
    ps = [g for g in (a, b, c) if g.kind == "P" and len(g.indices) == 2]
    if len(ds) == 2 and len(ps) == 1:
        A, B = (set(d.indices) for d in ds)
        if len(A & B) == 2:
            pair = set(ps[0].indices)
            shared = A & B
            privates = (A | B) - shared
            if pair == privates:
                return "pair-joins-privates"
            if pair == shared:
                return "pair-is-shared-edge"
            if len(pair & privates) == 1 and len(pair & shared) == 1:
                return "pair-straddles"
        return "pair-with-two-halves"
    if len(ds) == 3:
        return "three-halves"
    return "+".join(kinds)


def _triple_orbit_key(rank: int, triple) -> tuple:
    best = None
    for images in itertools.permutations(range(1, rank + 1)):
        def mv(g):
            idx = tuple(sorted(images[i - 1] for i in g.indices))
            return (g.kind, idx)
        key = tuple(sorted(mv(g) for g in triple))
        if best is None or key < best:
            best = key
    return best


def run_jacobi(rank: int, report: VerificationReport, contexts=()):
    """Every unordered triple of shift/half-commutator generators.

    All triples reduce for 3 or 4 indices; for 5 the outcome is reported
    per relabeling orbit without presuming the closure conjecture.
    """
    gens = core_generators(rank)
    rep_samples = []
    if rank in (3, 4):
        for a, b, c in itertools.combinations(gens, 3):
            poly = substituted_defect(rank, a, b, c)
            ok = rewrite_system(rank).reduce(poly).is_zero
            payload = f"{a}|{b}|{c}"
            report.add("jacobi", "triple", payload, triple_case(a, b, c),
                       "symbolic-reduce", "", PROVED if ok else INCONCLUSIVE)
            rep_samples.append((payload, poly))
        # spot-check a deterministic sample in each representation
        for name, ctx in contexts:
            for payload, poly in rep_samples[:: max(1, len(rep_samples) // 8)]:
                op = ctx.eval(poly)
                ok = op.is_zero_on_reliable()
                report.add("jacobi", "triple", payload, "operator identity",
                           "representation-eval", name,
                           ONWINDOW if ok else FAILED,
                           "" if ok else _witness_text(op))
    else:
        seen = {}
        for a, b, c in itertools.combinations(gens, 3):
            key = _triple_orbit_key(rank, (a, b, c))
            if key in seen:
                seen[key][1] += 1
                continue
            seen[key] = [(a, b, c), 1]
        for key in sorted(seen):
            (a, b, c), size = seen[key]
            poly = substituted_defect(rank, a, b, c)
            ok = rewrite_system(rank).reduce(poly).is_zero
            report.add("jacobi", "triple-orbit", f"{a}|{b}|{c} (x{size})",
                       triple_case(a, b, c), "symbolic-reduce", "",
                       PROVED if ok else INCONCLUSIVE)


def jacobi_suite(rank: int) -> VerificationReport:
    if rank not in (3, 4, 5):
        raise ConfigError("double-commutator suite runs at 3, 4 or 5 indices")
    report = VerificationReport(rank, ("jacobi",), ())
    run_jacobi(rank, report)
    return report.finish()


# -- relation catalog export ----------------------------------------------------

def relation_catalog(rank: int) -> list[dict]:
    rows = []
    families = ["central", "decomposition", "quad", "quadB", "d_cyclic",
                "ddef", "inner_P", "outer_P", "dd", "pdt",
                "pd_pair", "pd_flip", "pd_exchange", "pd_cycle", "pd_sum",
                "pres_rank1"]
    if rank >= 5:
        families += ["dd_one_overlap", "dd_disjoint"]
    if rank == 4:
        families += list(PENTAGON_FAMILIES)
    for family in families:
        for rid in enumerate_relations(rank, family):
            rows.append({"family": family, "payload": rid.payload(),
                         "anchor": anchor(family)})
    return rows


# -- serialization ----------------------------------------------------------------

def emit_report(report: VerificationReport, fmt: str = "json") -> bytes:
    """Deterministic serialization (no wall-clock content, sorted records)."""
    if fmt == "json":
        doc = {
            "rank": report.rank,
            "suites": list(report.suites),
            "param_sets": [list(p) for p in report.param_sets],
            "summary": report.summary(),
            "instances": [
                {"suite": r.suite, "family": r.family, "payload": r.payload,
                 "anchor": r.anchor, "method": r.method, "context": r.context,
                 "status": r.status, "witness": r.witness}
                for r in report.records
            ],
        }
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()
    if fmt == "human":
        lines = [f"rank {report.rank}; suites: {', '.join(report.suites)}"]
        for name, desc, w in report.param_sets:
            lines.append(f"params[{name}]: {desc} window {w}")
        for r in report.records:
            ctx = f" ({r.context})" if r.context else ""
            tail = f"  !! {r.witness}" if r.witness and r.status == FAILED else ""
            lines.append(f"[{r.suite}] {r.family} {r.payload}  "
                         f"{r.method}{ctx}: {r.status}  -- {r.anchor}{tail}")
        s = report.summary()
        lines.append(f"summary: {s[PROVED]} proved-zero, {s[ONWINDOW]} "
                     f"zero-on-window, {s[INCONCLUSIVE]} inconclusive, "
                     f"{s[FAILED]} FAILED")
        return ("\n".join(lines) + "\n").encode()
    raise ConfigError(f"unknown format {fmt!r}")


# -- flat key=value config files ---------------------------------------------------

def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text:
        raise ConfigError(f"decimals are rejected; write {text!r} as p/q")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {text!r}: {exc}") from None


def parse_config(text: str) -> dict:
    """Flat key = value lines; '#' starts a comment.  Keys: c1..c4, N as
    exact rationals, window (integer), suites (comma list), seed (integer)."""
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, val = (part.strip() for part in line.split("=", 1))
        if key in ("c1", "c2", "c3", "c4", "N"):
            out[key] = parse_rational(val)
        elif key in ("window", "seed"):
            if not val.lstrip("-").isdigit():
                raise ConfigError(f"line {lineno}: {key} must be an integer")
            out[key] = int(val)
        elif key == "suites":
            out[key] = tuple(s.strip() for s in val.split(",") if s.strip())
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return out


def params_from_config(cfg: dict) -> RepParams:
    missing = [k for k in ("c1", "c2", "c3", "c4", "N") if k not in cfg]
    if missing:
        raise ConfigError(f"config lacks keys: {', '.join(missing)}")
    return RepParams(cfg["c1"], cfg["c2"], cfg["c3"], cfg["c4"], cfg["N"])
