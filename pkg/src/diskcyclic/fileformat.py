"""Line-oriented weight and vector files.

Weight file::

    # Example: forward shift with weights 3 (n < 0) and 2 (n >= 0)
    kind: bilateral-forward
    neg-tail: 3
    pos-tail: 2
    table: 0:2.5 4:1,-1

``kind`` is one of bilateral-forward, bilateral-backward,
unilateral-backward, unilateral-forward, scalar.  Scalars take
``lambda: <re> [<im>]`` and nothing else.  Bilateral kinds need both tails;
unilateral kinds take only ``pos-tail`` (weights live on ``n >= 0``).
``table:`` may repeat; entries are ``<index>:<re>[,<im>]``.

Vector file: one ``<index>: <re> [<im>]`` per line.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Tuple, Union

from .core import Kind, ShiftOperator, Side, SparseVector, WeightSequence

PathLike = Union[str, Path]

_SHIFT_KINDS = {
    "bilateral-forward": Kind.BILATERAL_FORWARD,
    "bilateral-backward": Kind.BILATERAL_BACKWARD,
    "unilateral-backward": Kind.UNILATERAL_BACKWARD,
    "unilateral-forward": Kind.UNILATERAL_FORWARD,
}
_KEYS = ("kind", "lambda", "neg-tail", "pos-tail", "table")


class FileFormatError(ValueError):
    def __init__(self, message: str, source: str = "<string>", line: int = 0, column: int = 0):
        self.message, self.source, self.line, self.column = message, source, line, column
        super().__init__(f"{source}:{line}:{column}: {message}")


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _number(token: str, err) -> float:
    try:
        return float(token)
    except ValueError:
        raise err(f"expected a number, got {token!r}") from None


def _complex_from_fields(fields: List[Tuple[str, int]], err_at) -> complex:
    if not 1 <= len(fields) <= 2:
        col = fields[2][1] if len(fields) > 2 else 1
        raise err_at("expected '<re> [<im>]'", col)
    parts = [_number(tok, lambda m, c=col: err_at(m, c)) for tok, col in fields]
    return complex(parts[0], parts[1] if len(parts) > 1 else 0.0)


def _tokens(text: str, offset: int) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], offset + i + 1))
        i = j
    return out


def parse_weight_text(text: str, source: str = "<string>") -> ShiftOperator:
    fields: Dict[str, Tuple[complex, int]] = {}
    table: Dict[int, complex] = {}
    kind_name = None
    kind_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line.strip():
            continue

        def err_at(msg, col, _ln=lineno):
            return FileFormatError(msg, source, _ln, col)

        if ":" not in line:
            raise err_at("expected '<key>: <value>'", len(line) - len(line.lstrip()) + 1)
        key, rest = line.split(":", 1)
        key_col = len(key) - len(key.lstrip()) + 1
        key = key.strip()
        body_offset = len(line) - len(rest)
        if key not in _KEYS:
            raise err_at(f"unknown key {key!r}", key_col)
        toks = _tokens(rest, body_offset)
        if key == "kind":
            if kind_name is not None:
                raise err_at("duplicate key 'kind'", key_col)
            if len(toks) != 1:
                raise err_at("expected exactly one kind", body_offset + 1)
            kind_name, kind_line = toks[0][0], lineno
            if kind_name not in _SHIFT_KINDS and kind_name != "scalar":
                raise err_at(f"unknown kind {kind_name!r}", toks[0][1])
        elif key == "table":
            for tok, col in toks:
                idx, sep, val = tok.partition(":")
                if not sep:
                    raise err_at(f"table entry {tok!r} is not '<index>:<re>[,<im>]'", col)
                try:
                    k = int(idx)
                except ValueError:
                    raise err_at(f"bad table index {idx!r}", col) from None
                if k in table:
                    raise err_at(f"duplicate table index {k}", col)
                nums = val.split(",")
                if not 1 <= len(nums) <= 2:
                    raise err_at(f"table entry {tok!r} is not '<index>:<re>[,<im>]'", col)
                vcol = col + len(idx) + 1
                w = complex(*[_number(x, lambda m: err_at(m, vcol)) for x in nums])
                if w == 0:
                    raise err_at(f"zero weight at index {k}", col)
                table[k] = w
        else:
            if key in fields:
                raise err_at(f"duplicate key {key!r}", key_col)
            value = _complex_from_fields(toks, err_at)
            if value == 0:
                raise err_at(f"zero weight in {key}" if key != "lambda" else "lambda must be nonzero", key_col)
            fields[key] = (value, lineno)

    if kind_name is None:
        raise FileFormatError("missing 'kind'", source, 1, 1)

    def misplaced(key, why):
        return FileFormatError(f"'{key}' not allowed for {kind_name} ({why})", source, fields[key][1], 1)

    if kind_name == "scalar":
        for key in ("neg-tail", "pos-tail"):
            if key in fields:
                raise misplaced(key, "scalars have no weights")
        if table:
            raise FileFormatError(f"'table' not allowed for {kind_name}", source, kind_line, 1)
        if "lambda" not in fields:
            raise FileFormatError("scalar needs 'lambda'", source, kind_line, 1)
        return ShiftOperator(Kind.SCALAR, lam=fields["lambda"][0])

    kind = _SHIFT_KINDS[kind_name]
    if "lambda" in fields:
        raise misplaced("lambda", "only scalars take lambda")
    one_sided = kind_name.startswith("unilateral")
    if one_sided and "neg-tail" in fields:
        raise misplaced("neg-tail", "one-sided weights live on n >= 0")
    required = ("pos-tail",) if one_sided else ("neg-tail", "pos-tail")
    for key in required:
        if key not in fields:
            raise FileFormatError(f"{kind_name} needs '{key}'", source, kind_line, 1)
    if one_sided:
        bad = [k for k in table if k < 0]
        if bad:
            raise FileFormatError(f"negative table index {bad[0]} for one-sided weights", source, kind_line, 1)
    pos = fields["pos-tail"][0]
    neg = fields["neg-tail"][0] if "neg-tail" in fields else pos
    side = Side.ONE_SIDED if one_sided else Side.TWO_SIDED
    return ShiftOperator(kind, WeightSequence(table, neg, pos, side))


def parse_weight_file(path: PathLike) -> ShiftOperator:
    path = Path(path)
    return parse_weight_text(path.read_text(encoding="utf-8"), str(path))


def _fmt(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r} {z.imag!r}"


def format_weight_text(op: ShiftOperator) -> str:
    """Serialise a shift or scalar; ``parse_weight_text`` reads it back bit-exactly."""
    if op.kind is Kind.SCALAR:
        return f"kind: scalar\nlambda: {_fmt(op.lam)}\n"
    if op.kind is Kind.DIRECT_SUM:
        raise ValueError("direct sums have no weight-file representation")
    ws = op.weights
    lines = [f"kind: {op.kind.value}"]
    if not ws.one_sided:
        lines.append(f"neg-tail: {_fmt(ws.neg_tail)}")
    lines.append(f"pos-tail: {_fmt(ws.pos_tail)}")
    if ws.table:
        entries = []
        for k, w in ws.table:
            val = repr(w.real) if w.imag == 0 else f"{w.real!r},{w.imag!r}"
            entries.append(f"{k}:{val}")
        lines.append("table: " + " ".join(entries))
    return "\n".join(lines) + "\n"


def parse_vector_text(text: str, source: str = "<string>") -> SparseVector:
    entries: Dict[int, complex] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line.strip():
            continue

        def err_at(msg, col, _ln=lineno):
            return FileFormatError(msg, source, _ln, col)

        if ":" not in line:
            raise err_at("expected '<index>: <re> [<im>]'", 1)
        idx, rest = line.split(":", 1)
        try:
            k = int(idx)
        except ValueError:
            raise err_at(f"bad index {idx.strip()!r}", 1) from None
        if k in entries:
            raise err_at(f"duplicate index {k}", 1)
        entries[k] = _complex_from_fields(_tokens(rest, len(idx) + 1), err_at)
    return SparseVector(entries)


def parse_vector_file(path: PathLike) -> SparseVector:
    path = Path(path)
    return parse_vector_text(path.read_text(encoding="utf-8"), str(path))


def format_vector_text(x: SparseVector) -> str:
    return "".join(f"{k}: {_fmt(c)}\n" for k, c in x.items())
