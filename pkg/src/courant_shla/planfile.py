"""Plan files: parsing, validation and defaults.

The grammar ships as ``plan.lark`` next to this module. A plan holds at most
one ``plan { ... }`` settings block and any number of ``courant``,
``algebroid`` and ``dirac`` declarations, built lazily by the runner.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

SUITES = ("axioms", "lemmas", "shla", "dirac", "bialgebroid")
DECLARATIONS = ("courant", "algebroid", "dirac")
DEFAULTS = {"dim": 3, "degree": 2, "coeff": 3, "trials": 100, "seed": 0}


class PlanError(ValueError):
    """Malformed plan; carries the 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class Block:
    name: str
    fields: dict
    line: int = 0
    column: int = 0
    positions: dict = field(default_factory=dict)

    def error(self, message: str, key: str | None = None) -> PlanError:
        line, col = self.positions.get(key, (self.line, self.column))
        return PlanError(message, line, col)

    def get(self, key, default=None):
        return self.fields.get(key, default)

    def require(self, key):
        if key not in self.fields:
            raise self.error(f"{self.name} block needs '{key}'")
        return self.fields[key]


@dataclass
class Declaration:
    category: str
    name: str
    block: Block


@dataclass
class VerificationPlan:
    suites: tuple = SUITES
    trials: int = DEFAULTS["trials"]
    degree: int = DEFAULTS["degree"]
    coeff: int = DEFAULTS["coeff"]
    seed: int = DEFAULTS["seed"]
    dim: int = DEFAULTS["dim"]
    declarations: list = field(default_factory=list)

    def with_overrides(self, **kw) -> "VerificationPlan":
        kw = {k: v for k, v in kw.items() if v is not None}
        if "suites" in kw:
            kw["suites"] = tuple(kw["suites"])
        out = replace(self, **kw)
        _validate(out)
        return out

    def summary(self) -> dict:
        return {
            "suites": list(self.suites),
            "trials": self.trials,
            "degree": self.degree,
            "coeff": self.coeff,
            "seed": self.seed,
            "dim": self.dim,
        }


def grammar_text() -> str:
    return resources.files(__package__).joinpath("plan.lark").read_text()


_parser = None


def _get_parser() -> Lark:
    global _parser
    if _parser is None:
        _parser = Lark(grammar_text(), parser="lalr", propagate_positions=True)
    return _parser


class _ToBlocks(Transformer):
    def start(self, blocks):
        return blocks

    @v_args(meta=True)
    def block(self, meta, children):
        name, *entries = children
        b = Block(str(name), {}, meta.line, meta.column)
        for key, value, pos in entries:
            if key in b.fields:
                raise PlanError(f"duplicate field '{key}'", *pos)
            b.fields[key] = value
            b.positions[key] = pos
        return b

    def entry(self, children):
        name, value = children
        return str(name), value, (name.line, name.column)

    def string(self, children):
        return str(children[0])[1:-1]

    def number(self, children):
        v = Fraction(str(children[0]))
        return int(v) if v.denominator == 1 else v

    def true(self, _):
        return True

    def false(self, _):
        return False

    def list(self, children):
        return [c for c in children if c is not None]

    def map(self, children):
        out = {}
        for item in children:
            if item is None:
                continue
            k, v, pos = item
            if k in out:
                raise PlanError(f"duplicate key {k!r}", *pos)
            out[k] = v
        return out

    def item(self, children):
        (k, pos), v = children
        return k, v, pos

    def tuple_key(self, toks):
        return tuple(int(t) for t in toks), (toks[0].line, toks[0].column)

    def int_key(self, toks):
        return int(toks[0]), (toks[0].line, toks[0].column)

    def str_key(self, toks):
        return str(toks[0])[1:-1], (toks[0].line, toks[0].column)


def parse_blocks(text: str) -> list[Block]:
    try:
        tree = _get_parser().parse(text)
    except UnexpectedInput as exc:
        tok = getattr(exc, "token", None)
        what = f"unexpected {tok!r}" if isinstance(tok, Token) else "unexpected input"
        raise PlanError(what, exc.line, exc.column) from None
    try:
        return _ToBlocks().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, PlanError):
            raise exc.orig_exc from None
        raise


def _int_field(b: Block, key: str, default: int) -> int:
    v = b.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise b.error(f"'{key}' must be an integer", key)
    return v


def _validate(plan: VerificationPlan) -> None:
    if plan.trials < 1:
        raise PlanError("trials must be >= 1")
    if plan.degree < 0:
        raise PlanError("degree must be >= 0")
    if plan.coeff < 0:
        raise PlanError("coeff must be >= 0")
    if plan.dim < 0:
        raise PlanError("dim must be >= 0")
    if not -(2**63) <= plan.seed < 2**64:
        raise PlanError("seed must fit in 64 bits")
    if not plan.suites:
        raise PlanError("suites must be nonempty")
    for s in plan.suites:
        if s not in SUITES:
            raise PlanError(f"unknown suite '{s}' (known: {', '.join(SUITES)})")


def load_plan(text: str) -> VerificationPlan:
    blocks = parse_blocks(text)
    plan = VerificationPlan()
    seen_settings = False
    names: set[str] = set()
    counters: dict[str, int] = {}
    for b in blocks:
        if b.name == "plan":
            if seen_settings:
                raise b.error("only one plan block is allowed")
            seen_settings = True
            unknown = set(b.fields) - {"suites", "trials", "degree", "coeff", "seed", "dim"}
            if unknown:
                k = sorted(unknown)[0]
                raise b.error(f"unknown plan field '{k}'", k)
            suites = b.get("suites", list(SUITES))
            if not isinstance(suites, list) or not all(isinstance(s, str) for s in suites):
                raise b.error("'suites' must be a list of strings", "suites")
            for s in suites:
                if s not in SUITES:
                    raise b.error(f"unknown suite '{s}'", "suites")
            plan.suites = tuple(suites)
            for key in ("trials", "degree", "coeff", "seed", "dim"):
                setattr(plan, key, _int_field(b, key, DEFAULTS[key]))
            try:
                _validate(plan)
            except PlanError as exc:
                raise b.error(str(exc)) from None
        elif b.name in DECLARATIONS:
            kind = b.get("kind")
            if not isinstance(kind, str):
                raise b.error(f"{b.name} block needs a string 'kind'", "kind")
            counters[b.name] = counters.get(b.name, 0) + 1
            name = b.get("name", f"{b.name}{counters[b.name]}")
            if not isinstance(name, str):
                raise b.error("'name' must be a string", "name")
            if name in names:
                raise b.error(f"duplicate declaration name '{name}'", "name")
            names.add(name)
            plan.declarations.append(Declaration(b.name, name, b))
        else:
            raise PlanError(f"unknown block '{b.name}'", b.line, b.column)
    _validate(plan)
    return plan


def load_plan_file(path) -> VerificationPlan:
    return load_plan(Path(path).read_text())
