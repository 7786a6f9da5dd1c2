"""Layout expressions: ``dual(S3){(12),(123)}``, ``kp{u0,w}``, ``lib(Z2,A5)``, ``h2p{u0,x}``, ``custom(file.json)``.

Grammar::

    layout := NAME ["(" item ("," item)* ")"] ["{" [item ("," item)*] "}"]

Items are raw tokens; commas inside parentheses belong to the token, so
``(1,10)(2,3)`` is a single permutation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .cyclotomic import Cyclo
from .errors import DomainError, LayoutError, ParseError

KINDS = ("dual", "kp", "lib", "h2p", "custom")


@dataclass(frozen=True)
class LayoutExpr:
    kind: str
    args: tuple[str, ...] = ()
    reps: tuple[str, ...] | None = None

    def __str__(self):
        out = self.kind
        if self.args:
            out += "(" + ",".join(self.args) + ")"
        if self.reps is not None:
            out += "{" + ",".join(self.reps) + "}"
        return out


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, at: int | None = None):
        line, col = _position(self.text, self.pos if at is None else at)
        return ParseError(msg, line, col)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a layout name")
        return self.text[start:self.pos]

    def items(self, close: str) -> tuple[str, ...]:
        out = []
        if self.peek() == close:
            self.pos += 1
            return ()
        while True:
            self.skip()
            start = self.pos
            depth = 0
            buf = []
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    if depth == 0:
                        break
                    depth -= 1
                elif depth == 0 and ch in ",}":
                    break
                elif ch in "{":
                    raise self.error("unexpected '{'")
                if not ch.isspace():
                    buf.append(ch)
                self.pos += 1
            if depth:
                raise self.error("unbalanced parenthesis", start)
            token = "".join(buf)
            if not token:
                raise self.error("empty item")
            out.append(token)
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                continue
            if ch == close:
                self.pos += 1
                return tuple(out)
            raise self.error(f"expected ',' or {close!r}")

    def parse(self) -> LayoutExpr:
        self.skip()
        start = self.pos
        kind = self.name()
        if kind not in KINDS:
            raise self.error(f"unknown layout kind {kind!r}", start)
        args: tuple[str, ...] = ()
        reps = None
        if self.peek() == "(":
            self.pos += 1
            args = self.items(")")
        if self.peek() == "{":
            self.pos += 1
            reps = self.items("}")
        if self.peek():
            raise self.error(f"trailing input {self.text[self.pos:]!r}")
        return LayoutExpr(kind, args, reps)


def parse_layout(text: str) -> LayoutExpr:
    expr = _Parser(text).parse()
    _check_shape(expr, text)
    return expr


def _check_shape(expr: LayoutExpr, text: str):
    line, col = _position(text, len(text) - len(text.lstrip()))

    def fail(msg):
        return ParseError(msg, line, col)

    if expr.kind == "dual":
        if len(expr.args) != 1:
            raise fail("dual takes one group: dual(G){g1,...}")
        if expr.reps is None:
            raise fail("dual needs a generator list, e.g. dual(S3){(12),(123)}")
    elif expr.kind in ("kp", "h2p"):
        if expr.args:
            raise fail(f"{expr.kind} takes no arguments")
        if expr.reps is None and expr.kind == "kp":
            raise fail("kp needs a representation list, e.g. kp{u0,w}")
    elif expr.kind == "lib":
        if len(expr.args) != 2:
            raise fail("lib takes two groups: lib(G,Gamma)")
    elif expr.kind == "custom":
        if len(expr.args) != 1 or expr.reps is not None:
            raise fail("custom takes one JSON path: custom(file.json)")


@dataclass
class Built:
    """A resolved layout expression."""

    expr: LayoutExpr
    u: object
    layout: object = None
    extra: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.u.n


def load_custom(path: str | Path):
    """``{"blocks": [..], "entries": [[element, ...], ...]}`` with elements as ``[[[b, r, c], cyclo], ...]``."""
    from .algebra import MultiMatrixAlgebra
    from .magic import MagicUnitary

    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        A = MultiMatrixAlgebra([int(b) for b in data["blocks"]])
        rows = []
        for row in data["entries"]:
            rows.append([A.element({tuple(int(t) for t in lab): Cyclo.from_json(c) for lab, c in el})
                         for el in row])
    except (KeyError, TypeError, ValueError) as exc:
        raise LayoutError(f"malformed custom layout: {exc}") from None
    return MagicUnitary(rows, None, A)


def build(expr: LayoutExpr | str, base_dir: Path | None = None) -> Built:
    if isinstance(expr, str):
        expr = parse_layout(expr)
    if expr.kind == "dual":
        from .duals import builtin_group, dual_embedding, parse_element

        G = builtin_group(expr.args[0])
        gens = [parse_element(G, t) for t in expr.reps]
        emb = dual_embedding(G, gens)
        return Built(expr, emb.u, emb.layout, {"group": G, "embedding": emb})
    if expr.kind == "kp":
        from .kac_paljutkin import kp_embedding, kp_layout

        if not expr.reps:
            raise LayoutError("empty Kac-Paljutkin layout")
        layout = kp_layout(list(expr.reps))
        return Built(expr, kp_embedding(layout), layout)
    if expr.kind == "h2p":
        from .h2plus import h2p_pattern, replacement
        from .kac_paljutkin import kp_layout

        P = h2p_pattern()
        if not expr.reps:
            return Built(expr, P.pattern_magic(), None, {"pattern": P})
        layout = kp_layout(list(expr.reps))
        return Built(expr, replacement(layout), layout, {"pattern": P})
    if expr.kind == "lib":
        from .duals import builtin_group, liberation

        G, gamma = builtin_group(expr.args[0]), builtin_group(expr.args[1])
        lib = liberation(G, gamma)
        return Built(expr, lib.u, None, {"liberation": lib})
    if expr.kind == "custom":
        path = Path(expr.args[0])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return Built(expr, load_custom(path), None)
    raise LayoutError(f"unknown layout kind {expr.kind!r}")
