"""Checked integer inequalities and the case ledgers built from them.

A step is written symbolically (``"2*z(b, b, 2) + z(b, b, 3)"``), evaluated
against an environment, and stored together with its numeric rendering
(``"2*81 + 156"``).  The rendering is itself a closed expression, so any step
can be re-derived from its printed form alone.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

RELATIONS: dict[str, Callable[[int, int], bool]] = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">": operator.gt,
    ">=": operator.ge,
}
_PRETTY = {"<": "<", "<=": "≤", "=": "=", ">": ">", ">=": "≥"}

_BINOPS = {ast.Add: ("+", 1, operator.add), ast.Sub: ("-", 1, operator.sub),
           ast.Mult: ("*", 2, operator.mul), ast.FloorDiv: ("//", 2, operator.floordiv)}


class MissingEntry(LookupError):
    def __init__(self, key: tuple[int, int, int]) -> None:
        super().__init__(f"no table entry for z{key}")
        self.key = key


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def floor_div(a: int, b: int) -> int:
    return a // b


_FUNCS: dict[str, Callable[..., int]] = {"ceil_div": ceil_div, "floor_div": floor_div, "min": min, "max": max}


def evaluate(expr: str, env: Mapping[str, int] | None = None,
             z: Callable[[int, int, int], int] | None = None) -> tuple[int, str]:
    """Value of an integer expression plus its rendering with every name and z-lookup substituted."""
    env = env or {}
    tree = ast.parse(expr, mode="eval").body

    def ev(node: ast.AST) -> tuple[int, str, int]:
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value, str(node.value), 3
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise NameError(f"unknown name {node.id!r} in {expr!r}")
            v = int(env[node.id])
            return v, str(v), 3
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            v, s, p = ev(node.operand)
            return -v, f"-{s}" if p >= 3 else f"-({s})", 3
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            sym, prec, fn = _BINOPS[type(node.op)]
            lv, ls, lp = ev(node.left)
            rv, rs, rp = ev(node.right)
            if lp < prec:
                ls = f"({ls})"
            if rp < prec or (rp == prec and sym in ("-", "//")):
                rs = f"({rs})"
            return fn(lv, rv), f"{ls}{sym}{rs}" if prec == 2 else f"{ls} {sym} {rs}", prec
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            args = [ev(a) for a in node.args]
            name = node.func.id
            if name == "z":
                if z is None or len(args) != 3:
                    raise NameError(f"z(m, n, t) lookup unavailable in {expr!r}")
                v = z(*(a[0] for a in args))
                return v, str(v), 3
            if name in _FUNCS:
                v = _FUNCS[name](*(a[0] for a in args))
                return v, f"{name}({', '.join(a[1] for a in args)})", 3
        raise ValueError(f"unsupported syntax in {expr!r}: {ast.dump(node)}")

    value, text, _ = ev(tree)
    return value, text


@dataclass(frozen=True)
class ArithStep:
    label: str
    lhs_expr: str
    relation: str
    rhs_expr: str
    lhs_text: str
    rhs_text: str
    lhs: int
    rhs: int
    strictness_flag: bool = False

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def holds(self) -> bool:
        return RELATIONS[self.relation](self.lhs, self.rhs)

    def recheck(self) -> bool:
        """Re-derive both sides from the numeric renderings and confirm the stored values."""
        lv, _ = evaluate(self.lhs_text)
        rv, _ = evaluate(self.rhs_text)
        return lv == self.lhs and rv == self.rhs

    @property
    def status(self) -> str:
        if self.strictness_flag:
            return "FLAGGED"
        return "HOLDS" if self.holds else "FAILS"

    def inequality(self) -> str:
        lhs = self.lhs_text if self.lhs_text == str(self.lhs) else f"{self.lhs_text} = {self.lhs}"
        rhs = self.rhs_text if self.rhs_text == str(self.rhs) else f"{self.rhs} = {self.rhs_text}"
        return f"{lhs} {_PRETTY[self.relation]} {rhs}"

    def line(self) -> str:
        tail = "" if not self.strictness_flag else (" (holds)" if self.holds else " (fails)")
        return f"{self.status:<8} {self.label}: {self.inequality()}{tail}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label, "lhs_expr": self.lhs_expr, "relation": self.relation,
            "rhs_expr": self.rhs_expr, "lhs_text": self.lhs_text, "rhs_text": self.rhs_text,
            "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds,
            "strictness_flag": self.strictness_flag, "status": self.status,
        }


@dataclass(frozen=True)
class Assumption:
    """A structural step (vertex relabeling, named neighbourhood) trusted rather than checked."""

    label: str
    text: str

    def line(self) -> str:
        return f"{'ASSUMED':<8} {self.label}: {self.text}"

    def to_dict(self) -> dict[str, Any]:
        return {"label": self.label, "text": self.text, "status": "ASSUMED"}


class Env:
    """Named integers plus a z-lookup; builds steps from symbolic expressions."""

    def __init__(self, z: Callable[[int, int, int], int] | None = None, **values: int) -> None:
        self.z = z
        self.values: dict[str, int] = dict(values)

    def __getitem__(self, name: str) -> int:
        return self.values[name]

    def let(self, name: str, expr: str) -> int:
        v, _ = evaluate(expr, self.values, self.z)
        self.values[name] = v
        return v

    def eval(self, expr: str) -> int:
        return evaluate(expr, self.values, self.z)[0]

    def child(self, **values: int) -> Env:
        env = Env(self.z, **self.values)
        env.values.update(values)
        return env

    def step(self, label: str, lhs: str, relation: str, rhs: str, flag: bool = False) -> ArithStep:
        lv, lt = evaluate(lhs, self.values, self.z)
        rv, rt = evaluate(rhs, self.values, self.z)
        return ArithStep(label, lhs, relation, rhs, lt, rt, lv, rv, flag)


@dataclass
class CaseLedger:
    """Enumerated cases, the chain refuting each, and the cases left standing.

    ``facts`` are steps that must hold for the ledger's setup to be sound;
    ``cases`` are refuted when every step of their chain holds.
    """

    description: str
    facts: list[ArithStep] = field(default_factory=list)
    cases: list[str] = field(default_factory=list)
    refutations: dict[str, list[ArithStep]] = field(default_factory=dict)
    assumptions: list[Assumption] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add_case(self, case: str, chain: list[ArithStep] | None) -> None:
        self.cases.append(case)
        if chain is not None:
            self.refutations[case] = chain

    def refuted(self, case: str) -> bool:
        chain = self.refutations.get(case)
        return bool(chain) and all(s.holds for s in chain)

    @property
    def survivors(self) -> list[str]:
        return [c for c in self.cases if not self.refuted(c)]

    @property
    def facts_hold(self) -> bool:
        return all(s.holds for s in self.facts)

    @property
    def closed(self) -> bool:
        """Every fact holds and every case is refuted."""
        return self.facts_hold and not self.survivors

    def steps(self) -> list[ArithStep]:
        out = list(self.facts)
        for c in self.cases:
            out.extend(self.refutations.get(c, []))
        return out

    def failed_steps(self) -> list[ArithStep]:
        return [s for s in self.steps() if not s.holds]

    def lines(self, max_cases: int | None = None) -> list[str]:
        out = [f"== {self.description}"]
        out += [f"   note: {n}" for n in self.notes]
        out += ["   " + a.line() for a in self.assumptions]
        out += ["   " + s.line() for s in self.facts]
        shown = self.cases if max_cases is None else self.cases[:max_cases]
        for c in shown:
            verdict = "refuted" if self.refuted(c) else "SURVIVES"
            out.append(f"   case {c}: {verdict}")
            out += ["      " + s.line() for s in self.refutations.get(c, [])]
        if len(shown) < len(self.cases):
            out.append(f"   ... {len(self.cases) - len(shown)} further cases "
                       f"({sum(1 for c in self.cases[len(shown):] if self.refuted(c))} refuted)")
        out.append(f"   survivors: {', '.join(self.survivors) if self.survivors else 'none'}")
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "description": self.description,
            "notes": list(self.notes),
            "assumptions": [a.to_dict() for a in self.assumptions],
            "facts": [s.to_dict() for s in self.facts],
            "cases": [
                {"case": c, "refuted": self.refuted(c),
                 "chain": [s.to_dict() for s in self.refutations.get(c, [])]}
                for c in self.cases
            ],
            "survivors": self.survivors,
        }
