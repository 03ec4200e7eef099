"""Build the declarations of a plan, run the requested suites, emit a Report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import cartan, dirac
from .algebroid import ConstructionError, LieAlgebroid, LieBialgebroidPair, bialgebroid_compat_check, sub_sections
from .cartan import DiffForm, Multivector
from .courant import (
    AXIOM_ARITY,
    MUTATIONS,
    CourantInstance,
    bialgebroid_double,
    check_axiom,
    check_lemma_a1,
    check_lemma_a2,
    check_prop_main,
    drinfeld_double,
    is_zero_defect,
    quadratic_lie_algebra,
    render_defect,
    standard_instance,
    vector_field_bracket,
)
from .generate import random_poly, random_section, random_vector, random_word, trial_rng
from .linfty import Resolution, collapse
from .graded import GradedSum
from .planfile import SUITES, Block, Declaration, PlanError, VerificationPlan
from .poly import Poly, PolySyntaxError, as_poly, format_poly

REPORT_SCHEMA = "courant-shla-report/1"


# -- building declarations ----------------------------------------------------------


def _poly(b: Block, key: str, value, n: int) -> Poly:
    try:
        return as_poly(value, n)
    except (PolySyntaxError, ValueError, TypeError) as exc:
        raise b.error(f"bad polynomial in '{key}': {exc}", key) from None


def _field_map(b: Block, key: str, degree: int, n: int, cls):
    comps = b.require(key)
    if not isinstance(comps, dict):
        raise b.error(f"'{key}' must be a map like {{(1,2): \"x3\"}}", key)
    for v in comps.values():
        if not isinstance(v, (str, int, Fraction)) or isinstance(v, bool):
            raise b.error(f"'{key}' values must be polynomial strings or numbers", key)
    try:
        return cartan.parse_components(comps, degree, n, cls)
    except (PolySyntaxError, ValueError, TypeError) as exc:
        raise b.error(f"bad entry in '{key}': {exc}", key) from None


def _dim(b: Block, plan: VerificationPlan) -> int:
    n = b.get("dim", plan.dim)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise b.error("'dim' must be a nonnegative integer", "dim")
    return n


def _structure(b: Block, key: str, m: int | None = None) -> list:
    """Structure constants c[i][j][k] from a nested list or a sparse {(i,j,k): c} map."""
    v = b.require(key)
    if isinstance(v, list):
        m = len(v)
        ok = all(
            isinstance(row, list) and len(row) == m and all(isinstance(x, list) and len(x) == m for x in row) for row in v
        )
        if not ok:
            raise b.error(f"'{key}' must be an m x m x m nested list", key)
        try:
            return [[[Fraction(x) for x in row] for row in plane] for plane in v]
        except (TypeError, ValueError):
            raise b.error(f"'{key}' entries must be numbers", key) from None
    if isinstance(v, dict):
        for k, x in v.items():
            if not (isinstance(k, tuple) and len(k) == 3 and all(i >= 1 for i in k)):
                raise b.error(f"'{key}' keys must be 1-based (i,j,k) triples", key)
            if not isinstance(x, (int, Fraction)) or isinstance(x, bool):
                raise b.error(f"'{key}' values must be numbers", key)
        if m is None:
            m = max((max(k) for k in v), default=0)
        out = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
        for (i, j, k), x in v.items():
            if max(i, j, k) > m:
                raise b.error(f"index {(i, j, k)} exceeds dimension {m}", key)
            out[i - 1][j - 1][k - 1] = Fraction(x)
        return out
    raise b.error(f"'{key}' must be a nested list or an {{(i,j,k): c}} map", key)


def _matrix(b: Block, key: str) -> list:
    v = b.require(key)
    if not (isinstance(v, list) and all(isinstance(r, list) and len(r) == len(v) for r in v)):
        raise b.error(f"'{key}' must be a square nested list", key)
    try:
        return [[Fraction(x) for x in r] for r in v]
    except (TypeError, ValueError):
        raise b.error(f"'{key}' entries must be numbers", key) from None


def build_algebroid(b: Block, plan: VerificationPlan, known: dict) -> LieAlgebroid:
    kind = b.require("kind")
    if kind == "tangent":
        return LieAlgebroid.tangent(_dim(b, plan))
    if kind == "zero_bracket_cotangent":
        return LieAlgebroid.zero_bracket_cotangent(_dim(b, plan))
    if kind == "cotangent_poisson":
        return LieAlgebroid.cotangent_poisson(_field_map(b, "pi", 2, _dim(b, plan), Multivector))
    if kind == "point_lie_algebra":
        return LieAlgebroid.point_lie_algebra(_structure(b, "c", b.get("dim")))
    raise b.error(f"unknown algebroid kind '{kind}'", "kind")


def _algebroid_ref(b: Block, key: str, plan, known) -> LieAlgebroid:
    v = b.require(key)
    if isinstance(v, Block):
        if v.name != "algebroid":
            raise v.error(f"'{key}' must be an algebroid block")
        return build_algebroid(v, plan, known)
    if isinstance(v, str):
        obj = known.get(v)
        if not isinstance(obj, LieAlgebroid):
            raise b.error(f"'{key}' refers to unknown algebroid '{v}'", key)
        return obj
    raise b.error(f"'{key}' must be an algebroid block or the name of one", key)


def build_courant(b: Block, plan: VerificationPlan, known: dict, mutations=()) -> CourantInstance:
    kind = b.require("kind")
    name = b.get("name", "")
    if kind == "standard":
        return standard_instance(_dim(b, plan), mutations=mutations, name=name)
    if kind == "quadratic":
        return quadratic_lie_algebra(_structure(b, "c", b.get("dim")), _matrix(b, "pairing"), mutations=mutations, name=name)
    if kind == "drinfeld_double":
        m = b.get("dim")
        if m is None and isinstance(b.get("g"), dict) and isinstance(b.get("gstar"), dict):
            m = max((max(k) for k in list(b.get("g")) + list(b.get("gstar")) if isinstance(k, tuple)), default=0)
        return drinfeld_double(_structure(b, "g", m), _structure(b, "gstar", m), mutations=mutations, name=name)
    if kind == "bialgebroid_double":
        preset = b.get("pair")
        if preset is not None:
            if preset == "tangent_zero":
                pair = LieBialgebroidPair.tangent_zero(_dim(b, plan))
            elif preset == "poisson":
                pair = LieBialgebroidPair.poisson(_field_map(b, "pi", 2, _dim(b, plan), Multivector))
            else:
                raise b.error("'pair' must be \"tangent_zero\" or \"poisson\"", "pair")
        else:
            pair = LieBialgebroidPair(_algebroid_ref(b, "a", plan, known), _algebroid_ref(b, "astar", plan, known))
        return bialgebroid_double(pair, mutations=mutations, name=name)
    raise b.error(f"unknown courant kind '{kind}'", "kind")


@dataclass
class DiracDecl:
    candidate: dirac.DiracCandidate
    kind: str
    classical: object = None  # d omega or [pi, pi] for graph kinds
    expect: bool = True
    pair: LieBialgebroidPair | None = None
    swapped: LieBialgebroidPair | None = None
    double: CourantInstance | None = None


def build_dirac(b: Block, plan: VerificationPlan, known: dict, mutations=()) -> DiracDecl:
    amb = b.get("ambient")
    if amb is None:
        C = standard_instance(_dim(b, plan), mutations=mutations)
    else:
        C = known.get(amb)
        if not isinstance(C, CourantInstance):
            raise b.error(f"'ambient' refers to unknown courant instance '{amb}'", "ambient")
    kind = b.require("kind")
    n = C.nvars
    expect = b.get("expect", True)
    if not isinstance(expect, bool):
        raise b.error("'expect' must be true or false", "expect")
    if kind == "graph_2form":
        omega = _field_map(b, "omega", 2, n, DiffForm)
        decl = DiracDecl(dirac.graph_2form(C, omega), kind, cartan.de_rham_d(omega))
    elif kind == "graph_bivector":
        pi = _field_map(b, "pi", 2, n, Multivector)
        decl = DiracDecl(dirac.graph_bivector(C, pi), kind, cartan.schouten_bracket(pi, pi))
    elif kind == "tangent":
        decl = DiracDecl(dirac.tangent_subbundle(C), kind, expect=expect)
    elif kind == "cotangent":
        decl = DiracDecl(dirac.cotangent_subbundle(C), kind, expect=expect)
    elif kind == "frame":
        secs = b.require("sections")
        if not isinstance(secs, list) or not all(isinstance(s, list) for s in secs):
            raise b.error("'sections' must be a list of coordinate lists", "sections")
        frame = []
        for s in secs:
            if len(s) != C.rank:
                raise b.error(f"each section needs {C.rank} coordinates", "sections")
            frame.append(C.section([_poly(b, "sections", x, n) for x in s]))
        decl = DiracDecl(dirac.DiracCandidate(C, frame, "frame"), kind, expect=expect)
    else:
        raise b.error(f"unknown dirac kind '{kind}'", "kind")
    decl.candidate.name = b.get("name", decl.candidate.name)
    partner = b.get("transversal_to")
    if partner is not None:
        other = known.get(partner)
        if not isinstance(other, DiracDecl):
            raise b.error(f"'transversal_to' refers to unknown dirac declaration '{partner}'", "transversal_to")
        if other.candidate.C is not C:
            raise b.error("transversal partner lives in a different ambient instance", "transversal_to")
        decl.pair = dirac.extract_bialgebroid(decl.candidate, other.candidate)
        decl.swapped = dirac.extract_bialgebroid(other.candidate, decl.candidate)
        decl.double = bialgebroid_double(decl.pair)
    return decl


# -- checks ---------------------------------------------------------------------------


class Verdict:
    """Defect stand-in for yes/no checks."""

    def __init__(self, ok: bool, text: str):
        self.ok, self.text = ok, text

    def is_zero(self):
        return self.ok

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    target: str  # courant | algebroid | pair | dirac
    doc: str
    run: Callable
    randomized: bool = True
    applies: Callable = lambda obj: True


class _Gen:
    def __init__(self, rng, plan):
        self.rng, self.degree, self.coeff = rng, plan.degree, plan.coeff

    def sec(self, C):
        return random_section(C, self.degree, self.coeff, self.rng)

    def fn(self, n):
        return random_poly(n, self.degree, self.coeff, self.rng)

    def vec(self, rank, n):
        return random_vector(rank, n, self.degree, self.coeff, self.rng)


def _fmt_vec(v) -> str:
    return "[" + ", ".join(format_poly(c) for c in v) + "]"


def _axiom(k):
    def run(C, g):
        ns, nf = AXIOM_ARITY[k]
        secs = [g.sec(C) for _ in range(ns)]
        fns = [g.fn(C.nvars) for _ in range(nf)]
        inputs = [(f"e{i + 1}", str(s)) for i, s in enumerate(secs)] + [
            (("f", "g")[i], format_poly(f)) for i, f in enumerate(fns)
        ]
        return inputs, check_axiom(C, k, secs, fns)

    return run


def _lemma_bracket_D(C, g):
    e, f = g.sec(C), g.fn(C.nvars)
    return [("e", str(e)), ("f", format_poly(f))], check_prop_main(C, e, f)


def _lemma_T_D(C, g):
    e1, e2, f = g.sec(C), g.sec(C), g.fn(C.nvars)
    return [("e1", str(e1)), ("e2", str(e2)), ("f", format_poly(f))], check_lemma_a1(C, e1, e2, f)


def _lemma_K_2J(C, g):
    es = [g.sec(C) for _ in range(4)]
    return [(f"e{i + 1}", str(e)) for i, e in enumerate(es)], check_lemma_a2(C, *es)


def _partial(R, word, pairs):
    total = GradedSum()
    for i, j, part in R.shla_terms(len(word), word):
        if (i, j) in pairs:
            total.add_sum(part)
    return collapse(total)


def _lemma_l2l2_l3l1(C, g):
    R = Resolution(C)
    word = [R.section(g.sec(C)), R.section(g.sec(C)), R.function(g.fn(C.nvars))]
    return _word_inputs(word), _partial(R, word, {(2, 2), (1, 3)})


def _lemma_l3l2_l2l3(C, g):
    R = Resolution(C)
    word = [R.section(g.sec(C)) for _ in range(4)]
    return _word_inputs(word), _partial(R, word, {(2, 3), (3, 2)})


def _word_inputs(word):
    return [(f"x{i + 1}", repr(x)) for i, x in enumerate(word)]


def _shla(n):
    def run(C, g):
        R = Resolution(C)
        word = random_word(R, n, g.degree, g.coeff, g.rng)
        return _word_inputs(word), R.shla_defect(n, word)

    return run


def _shla_l1l3(C, g):
    R = Resolution(C)
    es = [g.sec(C) for _ in range(3)]
    l3 = R.l3(tuple(R.section(e) for e in es))
    return [(f"e{i + 1}", str(e)) for i, e in enumerate(es)], R.l1((l3,)).payload + C.jacobiator(*es)


def _alg_jacobi(A, g):
    a, b, c = (g.vec(A.rank, A.nvars) for _ in range(3))
    return [("a", _fmt_vec(a)), ("b", _fmt_vec(b)), ("c", _fmt_vec(c))], A.jacobiator(a, b, c)


def _alg_leibniz(A, g):
    a, b, f = g.vec(A.rank, A.nvars), g.vec(A.rank, A.nvars), g.fn(A.nvars)
    fb = tuple(f * x for x in b)
    af = A.act(a, f)
    rhs = tuple(f * x + af * y for x, y in zip(A.bracket(a, b), b))
    return [("a", _fmt_vec(a)), ("b", _fmt_vec(b)), ("f", format_poly(f))], sub_sections(A.bracket(a, fb), rhs)


def _alg_anchor(A, g):
    a, b = g.vec(A.rank, A.nvars), g.vec(A.rank, A.nvars)
    lhs = A.anchor(A.bracket(a, b))
    rhs = vector_field_bracket(A.anchor(a), A.anchor(b))
    return [("a", _fmt_vec(a)), ("b", _fmt_vec(b))], tuple(x - y for x, y in zip(lhs, rhs))


def _alg_dd(A, g):
    f, xi = g.fn(A.nvars), g.vec(A.rank, A.nvars)
    P = Multivector.from_vector(xi, A.nvars)
    ddf = A.d(A.d(Multivector.scalar(f, A.rank)))
    ddx = A.d(A.d(P))
    ok = ddf.is_zero() and ddx.is_zero()
    return [("f", format_poly(f)), ("xi", _fmt_vec(xi))], Verdict(ok, f"d d f = {ddf}; d d xi = {ddx}")


def _compat(swap: bool, attr: str = "pair"):
    def run(obj, g):
        pair = getattr(obj, attr)
        if swap:
            pair = pair.swapped()
        X, Y = g.vec(pair.rank, pair.nvars), g.vec(pair.rank, pair.nvars)
        return [("X", _fmt_vec(X)), ("Y", _fmt_vec(Y))], bialgebroid_compat_check(pair, X, Y)

    return run


def _dirac_isotropic(d: DiracDecl, g):
    w = dirac.is_isotropic(d.candidate)
    want = d.expect or d.kind.startswith("graph")
    if not want:
        return [], Verdict(True, "not required")
    return [], Verdict(w.ok, f"isotropic: {w.describe()}")


def _dirac_integrable(d: DiracDecl, g):
    L = d.candidate
    iso = dirac.is_isotropic(L)
    integ = dirac.is_integrable(L) if iso else None
    verdict = bool(iso) and bool(integ)
    text = f"is_integrable: {integ.describe() if integ is not None else 'not isotropic'}"
    if d.classical is not None:
        classical = d.classical.is_zero()
        what = "d omega" if d.kind == "graph_2form" else "[pi,pi]"
        return [], Verdict(verdict == classical, f"{text}; {what} = {d.classical}")
    return [], Verdict(verdict == d.expect, f"{text}; expected dirac={str(d.expect).lower()}")


def _dirac_roundtrip(d: DiracDecl, g):
    C = d.candidate.C
    e1, e2 = g.sec(C), g.sec(C)
    return [("e1", str(e1)), ("e2", str(e2))], dirac.roundtrip_defect(d.pair, d.double, e1, e2)


def _has_pair(obj):
    return getattr(obj, "pair", None) is not None


def _build_checks() -> list[Check]:
    out = []
    for k in range(1, 6):
        out.append(Check(f"axioms.axiom{k}", "axioms", "courant", f"Courant axiom {k}", _axiom(k)))
    out += [
        Check("lemmas.bracket_with_D", "lemmas", "courant", "[e, D f] = D<e, D f>", _lemma_bracket_D),
        Check("lemmas.T_with_D", "lemmas", "courant", "T(e1, e2, D f) = 1/4 rho([e1, e2]) f", _lemma_T_D),
        Check("lemmas.K_plus_2J", "lemmas", "courant", "K + 2J = 0 on four sections", _lemma_K_2J),
        Check("lemmas.l2l2_plus_l3l1", "lemmas", "courant", "(l2 l2 + l3 l1)(e1 ^ e2 ^ f) = 0", _lemma_l2l2_l3l1),
        Check("lemmas.l3l2_minus_l2l3", "lemmas", "courant", "(l3 l2 - l2 l3)(e1 ^ e2 ^ e3 ^ e4) = 0", _lemma_l3l2_l2l3),
    ]
    for n in range(1, 6):
        out.append(Check(f"shla.n{n}", "shla", "courant", f"L-infinity relation of arity {n} on mixed-degree words", _shla(n)))
    out.append(Check("shla.l1l3_plus_jacobiator", "shla", "courant", "l1 l3 (e1 ^ e2 ^ e3) + J(e1, e2, e3) = 0", _shla_l1l3))
    out += [
        Check("dirac.isotropic", "dirac", "dirac", "frame pairings vanish, rank is half", _dirac_isotropic, randomized=False),
        Check(
            "dirac.integrable",
            "dirac",
            "dirac",
            "bracket closure agrees with d omega = 0 / [pi,pi] = 0 (or the declared expectation)",
            _dirac_integrable,
            randomized=False,
        ),
        Check("dirac.extract_roundtrip", "dirac", "dirac", "double of the extracted pair reproduces the ambient bracket", _dirac_roundtrip, applies=_has_pair),
        Check("dirac.extract_compat", "dirac", "dirac", "extracted pair satisfies the bialgebroid condition", _compat(False), applies=_has_pair),
        Check(
            "dirac.extract_compat_swapped",
            "dirac",
            "dirac",
            "extraction with the roles swapped satisfies the bialgebroid condition",
            _compat(False, "swapped"),
            applies=_has_pair,
        ),
        Check("bialgebroid.jacobi", "bialgebroid", "algebroid", "Jacobi identity of the algebroid bracket", _alg_jacobi),
        Check("bialgebroid.leibniz", "bialgebroid", "algebroid", "[a, f b] = f [a, b] + (rho(a) f) b", _alg_leibniz),
        Check("bialgebroid.anchor_bracket", "bialgebroid", "algebroid", "rho [a, b] = [rho a, rho b]", _alg_anchor),
        Check("bialgebroid.d_squared", "bialgebroid", "algebroid", "d d = 0 on functions and dual sections", _alg_dd),
        Check("bialgebroid.compat", "bialgebroid", "pair", "d_* is a derivation of the bracket on A", _compat(False), applies=_has_pair),
        Check("bialgebroid.compat_swapped", "bialgebroid", "pair", "the same for the swapped pair (A*, A)", _compat(True), applies=_has_pair),
    ]
    return out


CHECKS = _build_checks()


def list_checks() -> list[tuple[str, str]]:
    return [(c.id, c.doc) for c in CHECKS]


# -- report --------------------------------------------------------------------------------


@dataclass
class CheckRecord:
    suite: str
    instance: str
    check: str
    trials: int
    passed: int
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.passed == self.trials

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instance": self.instance,
            "check": self.check,
            "trials": self.trials,
            "passed": self.passed,
            "status": "pass" if self.ok else "fail",
            "counterexample": self.counterexample,
        }


@dataclass
class InstanceRecord:
    name: str
    category: str
    kind: str
    error: str | None = None

    def as_dict(self) -> dict:
        return {"name": self.name, "category": self.category, "kind": self.kind, "error": self.error}


@dataclass
class Report:
    plan: dict
    mutations: list
    instances: list = field(default_factory=list)
    records: list = field(default_factory=list)
    timings: dict | None = None

    @property
    def errors(self) -> int:
        return sum(1 for i in self.instances if i.error)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if not r.ok)

    @property
    def exit_code(self) -> int:
        if self.errors:
            return 2
        return 1 if self.failed else 0

    def totals(self) -> dict:
        return {
            "checks": len(self.records),
            "passed": len(self.records) - self.failed,
            "failed": self.failed,
            "trials": sum(r.trials for r in self.records),
            "construction_errors": self.errors,
        }

    def as_dict(self) -> dict:
        out = {
            "schema": REPORT_SCHEMA,
            "plan": self.plan,
            "mutations": self.mutations,
            "instances": [i.as_dict() for i in self.instances],
            "checks": [r.as_dict() for r in self.records],
            "totals": self.totals(),
            "exit_code": self.exit_code,
        }
        if self.timings is not None:
            out["timings"] = self.timings
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        p = self.plan
        lines = [
            f"plan: suites={','.join(p['suites'])} trials={p['trials']} degree={p['degree']} "
            f"coeff={p['coeff']} seed={p['seed']}"
        ]
        if self.mutations:
            lines.append(f"fault injection: {','.join(self.mutations)}")
        for inst in self.instances:
            if inst.error:
                lines.append(f"ERROR {inst.category} {inst.name} ({inst.kind}): {inst.error}")
        suite = None
        for r in self.records:
            if r.suite != suite:
                suite = r.suite
                lines.append(f"[{suite}]")
            mark = "PASS" if r.ok else "FAIL"
            lines.append(f"  {mark} {r.instance} {r.check} {r.passed}/{r.trials}")
            if r.counterexample:
                ce = r.counterexample
                lines.append(f"    first failure: trial {ce['trial']} (seed {ce['seed']})")
                for name, text in ce["inputs"]:
                    lines.append(f"      {name} = {text}")
                lines.append(f"      defect = {ce['defect']}")
        t = self.totals()
        lines.append(
            f"totals: {t['checks']} checks, {t['passed']} passed, {t['failed']} failed, "
            f"{t['trials']} trials, {t['construction_errors']} construction errors"
        )
        if self.timings is not None:
            for s, secs in self.timings.items():
                lines.append(f"time {s}: {secs:.3f}s")
        return "\n".join(lines) + "\n"


# -- running --------------------------------------------------------------------------------


def build_declarations(plan: VerificationPlan, mutations=()) -> tuple[dict, list]:
    """Construct every declaration; failures become InstanceRecord errors."""
    known: dict = {}
    records = []
    for d in plan.declarations:
        kind = d.block.get("kind", "?")
        rec = InstanceRecord(d.name, d.category, str(kind))
        try:
            if d.category == "courant":
                obj = build_courant(d.block, plan, known, mutations)
                rec.kind = obj.kind
            elif d.category == "algebroid":
                obj = build_algebroid(d.block, plan, known)
            else:
                obj = build_dirac(d.block, plan, known, mutations)
            known[d.name] = obj
        except (ConstructionError, PlanError, PolySyntaxError, ValueError) as exc:
            rec.error = str(exc)
        records.append(rec)
    return known, records


def _targets(d: Declaration, obj, check: Check) -> bool:
    if check.target == "courant":
        return d.category == "courant"
    if check.target == "pair":
        return d.category == "courant" and check.applies(obj)
    if check.target == "algebroid":
        return d.category == "algebroid"
    return d.category == "dirac" and check.applies(obj)


def run_check(check: Check, name: str, obj, plan: VerificationPlan) -> CheckRecord:
    trials = plan.trials if check.randomized else 1
    rec = CheckRecord(check.suite, name, check.id, trials, 0)
    for t in range(trials):
        g = _Gen(trial_rng(plan.seed, name, check.id, t), plan)
        inputs, defect = check.run(obj, g)
        if is_zero_defect(defect):
            rec.passed += 1
        elif rec.counterexample is None:
            rec.counterexample = {
                "seed": plan.seed,
                "trial": t,
                "inputs": [list(x) for x in inputs],
                "defect": render_defect(defect),
            }
    return rec


def run_plan(plan: VerificationPlan, *, mutations=(), timings: bool = False) -> Report:
    """Execute every requested check; records are ordered by (suite, declaration, check)."""
    muts = sorted(set(mutations))
    for m in muts:
        if m not in MUTATIONS:
            raise ValueError(f"unknown fault injection '{m}'")
    known, inst_records = build_declarations(plan, muts)
    report = Report(plan.summary(), muts, inst_records, timings={} if timings else None)
    for suite in SUITES:
        if suite not in plan.suites:
            continue
        t0 = time.perf_counter()
        for d in plan.declarations:
            obj = known.get(d.name)
            if obj is None:
                continue
            for check in CHECKS:
                if check.suite == suite and _targets(d, obj, check):
                    report.records.append(run_check(check, d.name, obj, plan))
        if timings:
            report.timings[suite] = round(time.perf_counter() - t0, 3)
    return report
