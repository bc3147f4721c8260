"""Weighted shifts, scalar operators and finitely supported vectors.

Weights are stored as a finite table of exceptional values on top of two
constant tails: ``neg_tail`` for indices ``n < 0`` and ``pos_tail`` for
``n >= 0``.  Every window product over such a sequence has a closed form,
which is what the criteria and spectral modules rely on.

Direct sums interleave their components: the left operator acts on even
slots (``2k``) and the right one on odd slots (``2k + 1``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping, Optional, Tuple, Union

import numpy as np

Number = Union[int, float, complex]

# exp() overflows above this and underflows to zero below the negative one
_LOG_MAX = 709.78
_LOG_MIN = -745.13


class DomainError(ValueError):
    """Index or vector outside the index set of an operator or sequence."""


class InvertibilityError(ValueError):
    """Operator is not invertible."""


class NoRightInverseError(ValueError):
    """Operator is not surjective, so no right inverse exists."""


class Side(str, Enum):
    TWO_SIDED = "two-sided"
    ONE_SIDED = "one-sided-nonneg"


class Kind(str, Enum):
    BILATERAL_FORWARD = "bilateral-forward"
    BILATERAL_BACKWARD = "bilateral-backward"
    UNILATERAL_BACKWARD = "unilateral-backward"
    UNILATERAL_FORWARD = "unilateral-forward"
    SCALAR = "scalar"
    DIRECT_SUM = "direct-sum"


_FORWARD_KINDS = (Kind.BILATERAL_FORWARD, Kind.UNILATERAL_FORWARD)
_SHIFT_KINDS = (
    Kind.BILATERAL_FORWARD,
    Kind.BILATERAL_BACKWARD,
    Kind.UNILATERAL_BACKWARD,
    Kind.UNILATERAL_FORWARD,
)


# ---------------------------------------------------------------------------
# Weight sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightSequence:
    """Nonzero complex weights: a finite table over two constant tails.

    ``table`` accepts a mapping or pairs; it is stored as a sorted tuple of
    ``(index, weight)`` with entries equal to their tail dropped, so two
    sequences describing the same weights compare equal.  One-sided
    sequences live on ``n >= 0`` and only use ``pos_tail``.
    """

    table: Tuple[Tuple[int, complex], ...] = ()
    neg_tail: complex = 1.0
    pos_tail: complex = 1.0
    side: Side = Side.TWO_SIDED

    def __post_init__(self):
        side = Side(self.side)
        pos = complex(self.pos_tail)
        neg = pos if side is Side.ONE_SIDED else complex(self.neg_tail)
        if neg == 0:
            raise ValueError("zero weight in neg-tail")
        if pos == 0:
            raise ValueError("zero weight in pos-tail")
        raw = self.table.items() if isinstance(self.table, Mapping) else self.table
        clean = {}
        for k, w in raw:
            if int(k) != k:
                raise ValueError(f"non-integer weight index {k!r}")
            k, w = int(k), complex(w)
            if side is Side.ONE_SIDED and k < 0:
                raise DomainError(f"one-sided weight index {k} is negative")
            if w == 0:
                raise ValueError(f"zero weight at index {k}")
            if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                raise ValueError(f"non-finite weight at index {k}")
            if w != (neg if k < 0 else pos):
                clean[k] = w
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "neg_tail", neg)
        object.__setattr__(self, "pos_tail", pos)
        object.__setattr__(self, "table", tuple(sorted(clean.items())))

    @classmethod
    def constant(cls, value: Number, side: Side = Side.TWO_SIDED) -> "WeightSequence":
        return cls((), value, value, side)

    @property
    def one_sided(self) -> bool:
        return self.side is Side.ONE_SIDED

    def as_dict(self) -> dict:
        return dict(self.table)

    @property
    def radius(self) -> int:
        """Largest |index| carrying an explicit table entry (0 if none)."""
        return max((abs(k) for k, _ in self.table), default=0)

    def tail_at(self, n: int) -> complex:
        return self.neg_tail if n < 0 else self.pos_tail

    def weight_at(self, n: int) -> complex:
        if self.one_sided and n < 0:
            raise DomainError(f"index {n} outside one-sided weight sequence")
        for k, w in self.table:
            if k == n:
                return w
        return self.tail_at(n)

    def _moduli(self) -> list:
        return [abs(self.neg_tail), abs(self.pos_tail)] + [abs(w) for _, w in self.table]

    @property
    def sup_modulus(self) -> float:
        return max(self._moduli())

    @property
    def inf_modulus(self) -> float:
        return min(self._moduli())

    @property
    def is_real(self) -> bool:
        return all(w.imag == 0 for w in (self.neg_tail, self.pos_tail, *(w for _, w in self.table)))

    def log_sum(self, j, n):
        """Sum of ``log|w_k|`` for ``k = j, ..., j+n-1``, in closed form.

        Accepts integers or integer arrays (broadcast together).  Tails
        contribute ``count * log|tail|``; table entries add their deviation
        from the tail they replace.
        """
        j_arr = np.asarray(j, dtype=np.int64)
        n_arr = np.asarray(n, dtype=np.int64)
        if np.any(n_arr < 0):
            raise ValueError("window length must be nonnegative")
        end = j_arr + n_arr
        if self.one_sided and np.any((j_arr < 0) & (n_arr > 0)):
            raise DomainError("window leaves the one-sided index domain")
        neg_count = np.clip(np.minimum(end, 0) - j_arr, 0, None)
        pos_count = n_arr - neg_count
        total = neg_count * math.log(abs(self.neg_tail)) + pos_count * math.log(abs(self.pos_tail))
        for k, w in self.table:
            delta = math.log(abs(w)) - math.log(abs(self.tail_at(k)))
            total = total + np.where((j_arr <= k) & (k < end), delta, 0.0)
        if np.ndim(total) == 0:
            return float(total)
        return np.asarray(total, dtype=float)

    def phase(self, j: int, n: int) -> complex:
        """Unit factor ``prod w_k/|w_k|`` over the same window as ``log_sum``."""
        end = j + n
        neg_count = max(0, min(end, 0) - j)
        pos_count = n - neg_count
        inside = [(k, w) for k, w in self.table if j <= k < end]
        if self.is_real:
            flips = neg_count * (self.neg_tail.real < 0) + pos_count * (self.pos_tail.real < 0)
            for k, w in inside:
                flips += (w.real < 0) - (self.tail_at(k).real < 0)
            return -1.0 if flips % 2 else 1.0
        angle = neg_count * cmath.phase(self.neg_tail) + pos_count * cmath.phase(self.pos_tail)
        for k, w in inside:
            angle += cmath.phase(w) - cmath.phase(self.tail_at(k))
        return cmath.rect(1.0, math.fmod(angle, 2 * math.pi))

    def transformed(
        self,
        fn: Callable[[complex], complex] = lambda w: w,
        sign: int = 1,
        offset: int = 0,
        side: Optional[Side] = None,
    ) -> "WeightSequence":
        """Sequence with ``new_n = fn(old_{sign*n + offset})``.

        Indices whose source falls outside a one-sided domain take the new
        tail value (they are never read by the operators that produce them).
        """
        side = self.side if side is None else Side(side)
        if sign == 1:
            new_neg, new_pos = fn(self.neg_tail), fn(self.pos_tail)
        elif sign == -1:
            new_neg, new_pos = fn(self.pos_tail), fn(self.neg_tail)
        else:
            raise ValueError("sign must be +1 or -1")
        if side is Side.ONE_SIDED:
            new_neg = new_pos
        reach = self.radius + abs(offset) + 1
        lo = 0 if side is Side.ONE_SIDED else -reach
        table = {}
        for n in range(lo, reach + 1):
            src = sign * n + offset
            if self.one_sided and src < 0:
                continue
            table[n] = fn(self.weight_at(src))
        return WeightSequence(table, new_neg, new_pos, side)


def weight_at(ws: WeightSequence, n: int) -> complex:
    return ws.weight_at(n)


def reflect(ws: WeightSequence) -> WeightSequence:
    """``w_n -> w_{-n}``; conjugates a backward shift into a forward one."""
    if ws.one_sided:
        raise DomainError("cannot reflect a one-sided sequence")
    return ws.transformed(sign=-1)


# ---------------------------------------------------------------------------
# Sparse vectors
# ---------------------------------------------------------------------------


class SparseVector:
    """Finitely supported complex vector indexed by integers.

    Exact zeros are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Union[Mapping[int, Number], Iterable[Tuple[int, Number]], None] = None):
        items = entries.items() if isinstance(entries, Mapping) else (entries or ())
        acc: dict = {}
        for k, c in items:
            acc[int(k)] = acc.get(int(k), 0j) + complex(c)
        self._entries = {k: acc[k] for k in sorted(acc) if acc[k] != 0}

    @classmethod
    def basis(cls, index: int, coef: Number = 1.0) -> "SparseVector":
        return cls({index: coef})

    @classmethod
    def scalar(cls, value: Number) -> "SparseVector":
        """Element of the one-dimensional space, stored at index 0."""
        return cls({0: value})

    def __getitem__(self, index: int) -> complex:
        return self._entries.get(index, 0j)

    def items(self) -> Iterator[Tuple[int, complex]]:
        return iter(self._entries.items())

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def norm(self) -> float:
        return math.hypot(*(abs(c) for c in self._entries.values()))

    def inner(self, other: "SparseVector") -> complex:
        """Sesquilinear pairing, linear in ``self`` and conjugate-linear in ``other``."""
        terms = [c * other[k].conjugate() for k, c in self._entries.items() if k in other._entries]
        return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))

    def __add__(self, other: "SparseVector") -> "SparseVector":
        return SparseVector(list(self.items()) + list(other.items()))

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-1.0) * other

    def __mul__(self, scale: Number) -> "SparseVector":
        return SparseVector({k: scale * c for k, c in self._entries.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "SparseVector":
        return self * -1.0

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {c!r}" for k, c in self._entries.items())
        return f"SparseVector({{{body}}})"


def _scaled(coef: complex, log_mod: float, phase: complex) -> complex:
    """``coef * exp(log_mod) * phase`` without intermediate overflow."""
    mag = abs(coef)
    exponent = log_mod + math.log(mag)
    if exponent < _LOG_MIN:
        return 0j
    size = math.exp(exponent) if exponent < _LOG_MAX else math.inf
    return size * (coef / mag) * phase


def _scalar_power(lam: complex, n: int) -> Tuple[float, complex]:
    """``lam**n`` as (log-modulus, unit phase)."""
    if lam == 0:
        return (-math.inf, 1.0) if n else (0.0, 1.0)
    if lam.imag == 0:
        return n * math.log(abs(lam.real)), (-1.0 if lam.real < 0 and n % 2 else 1.0)
    return n * math.log(abs(lam)), cmath.rect(1.0, math.fmod(n * cmath.phase(lam), 2 * math.pi))


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftOperator:
    """Weighted shift, scalar multiple of the identity on C, or a direct sum.

    Build instances with the module-level constructors
    (:func:`bilateral_forward`, :func:`scalar`, :func:`direct_sum`, ...).
    """

    kind: Kind
    weights: Optional[WeightSequence] = None
    lam: Optional[complex] = None
    parts: Optional[Tuple["ShiftOperator", "ShiftOperator"]] = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in _SHIFT_KINDS:
            if not isinstance(self.weights, WeightSequence):
                raise TypeError(f"{kind.value} needs a WeightSequence")
            want_one_sided = kind in (Kind.UNILATERAL_BACKWARD, Kind.UNILATERAL_FORWARD)
            if self.weights.one_sided != want_one_sided:
                raise DomainError(f"{kind.value} needs a {'one' if want_one_sided else 'two'}-sided weight sequence")
        elif kind is Kind.SCALAR:
            if self.lam is None:
                raise TypeError("scalar operator needs lam")
            object.__setattr__(self, "lam", complex(self.lam))
        elif self.parts is None or len(self.parts) != 2:
            raise TypeError("direct sum needs two parts")

    @property
    def is_shift(self) -> bool:
        return self.kind in _SHIFT_KINDS

    @property
    def is_bilateral(self) -> bool:
        return self.kind in (Kind.BILATERAL_FORWARD, Kind.BILATERAL_BACKWARD)

    @property
    def is_forward(self) -> bool:
        return self.kind in _FORWARD_KINDS

    @property
    def norm_bound(self) -> float:
        """Operator norm: ``sup|w_n|``, ``|lam|``, or the max over parts."""
        if self.is_shift:
            return self.weights.sup_modulus
        if self.kind is Kind.SCALAR:
            return abs(self.lam)
        return max(p.norm_bound for p in self.parts)

    def in_domain(self, index: int) -> bool:
        if self.kind is Kind.SCALAR:
            return index == 0
        if self.kind is Kind.DIRECT_SUM:
            part = self.parts[index % 2]
            return part.in_domain(index // 2)
        return index >= 0 or not self.weights.one_sided

    def check_vector(self, x: SparseVector) -> None:
        for k in x.support:
            if not self.in_domain(k):
                raise DomainError(f"index {k} outside the domain of {self.kind.value}")


def bilateral_forward(ws: WeightSequence) -> ShiftOperator:
    return ShiftOperator(Kind.BILATERAL_FORWARD, ws)


def bilateral_backward(ws: WeightSequence) -> ShiftOperator:
    return ShiftOperator(Kind.BILATERAL_BACKWARD, ws)


def unilateral_backward(ws: WeightSequence) -> ShiftOperator:
    return ShiftOperator(Kind.UNILATERAL_BACKWARD, ws)


def unilateral_forward(ws: WeightSequence) -> ShiftOperator:
    return ShiftOperator(Kind.UNILATERAL_FORWARD, ws)


def scalar(lam: Number) -> ShiftOperator:
    return ShiftOperator(Kind.SCALAR, lam=lam)


def direct_sum(a: ShiftOperator, b: ShiftOperator) -> ShiftOperator:
    return ShiftOperator(Kind.DIRECT_SUM, parts=(a, b))


def split(x: SparseVector) -> Tuple[SparseVector, SparseVector]:
    """Undo the even/odd interleaving of a direct-sum vector."""
    even = {k // 2: c for k, c in x.items() if k % 2 == 0}
    odd = {k // 2: c for k, c in x.items() if k % 2 == 1}
    return SparseVector(even), SparseVector(odd)


def interleave(a: SparseVector, b: SparseVector) -> SparseVector:
    return SparseVector([(2 * k, c) for k, c in a.items()] + [(2 * k + 1, c) for k, c in b.items()])


def apply(op: ShiftOperator, x: SparseVector) -> SparseVector:
    op.check_vector(x)
    if op.kind is Kind.SCALAR:
        return x * op.lam
    if op.kind is Kind.DIRECT_SUM:
        a, b = split(x)
        return interleave(apply(op.parts[0], a), apply(op.parts[1], b))
    step = 1 if op.is_forward else -1
    out = []
    for j, c in x.items():
        if op.kind is Kind.UNILATERAL_BACKWARD and j == 0:
            continue
        out.append((j + step, c * op.weights.weight_at(j)))
    return SparseVector(out)


def apply_power(op: ShiftOperator, x: SparseVector, n: int) -> SparseVector:
    """``T^n x``; shifts move each ``e_j`` in one step scaled by its window product."""
    if n < 0:
        raise ValueError("power must be nonnegative")
    op.check_vector(x)
    if n == 0:
        return x
    if op.kind is Kind.SCALAR:
        log_mod, phase = _scalar_power(op.lam, n)
        if log_mod == -math.inf:
            return SparseVector()
        return SparseVector({k: _scaled(c, log_mod, phase) for k, c in x.items()})
    if op.kind is Kind.DIRECT_SUM:
        a, b = split(x)
        return interleave(apply_power(op.parts[0], a, n), apply_power(op.parts[1], b, n))
    ws = op.weights
    out = []
    for j, c in x.items():
        if op.is_forward:
            start, target = j, j + n
        else:
            start, target = j - n + 1, j - n
            if op.kind is Kind.UNILATERAL_BACKWARD and target < 0:
                continue
        out.append((target, _scaled(c, ws.log_sum(start, n), ws.phase(start, n))))
    return SparseVector(out)


def adjoint(op: ShiftOperator) -> ShiftOperator:
    """Hilbert-space adjoint: forward weights ``w`` become backward ``conj(w_{n-1})``."""
    conj = complex.conjugate
    if op.kind is Kind.SCALAR:
        return scalar(op.lam.conjugate())
    if op.kind is Kind.DIRECT_SUM:
        return direct_sum(adjoint(op.parts[0]), adjoint(op.parts[1]))
    ws = op.weights
    if op.kind is Kind.BILATERAL_FORWARD:
        return bilateral_backward(ws.transformed(conj, offset=-1))
    if op.kind is Kind.BILATERAL_BACKWARD:
        return bilateral_forward(ws.transformed(conj, offset=1))
    if op.kind is Kind.UNILATERAL_BACKWARD:
        return unilateral_forward(ws.transformed(conj, offset=1))
    return unilateral_backward(ws.transformed(conj, offset=-1))


def inverse(op: ShiftOperator) -> ShiftOperator:
    if op.kind is Kind.SCALAR:
        if op.lam == 0:
            raise InvertibilityError("zero scalar operator is not invertible")
        return scalar(1 / op.lam)
    if op.kind is Kind.DIRECT_SUM:
        return direct_sum(inverse(op.parts[0]), inverse(op.parts[1]))
    if not op.is_bilateral:
        raise InvertibilityError(f"{op.kind.value} shift is not invertible")
    if op.weights.inf_modulus <= 0:
        raise InvertibilityError("weights are not bounded away from zero")
    recip = lambda w: 1 / w  # noqa: E731
    if op.kind is Kind.BILATERAL_FORWARD:
        return bilateral_backward(op.weights.transformed(recip, offset=-1))
    return bilateral_forward(op.weights.transformed(recip, offset=1))


def right_inverse(op: ShiftOperator) -> ShiftOperator:
    """``S`` with ``T S = I`` on finitely supported vectors."""
    if op.kind is Kind.UNILATERAL_FORWARD:
        raise NoRightInverseError("unilateral forward shift is not surjective")
    if op.kind is Kind.UNILATERAL_BACKWARD:
        return unilateral_forward(op.weights.transformed(lambda w: 1 / w, offset=1))
    if op.kind is Kind.DIRECT_SUM:
        return direct_sum(right_inverse(op.parts[0]), right_inverse(op.parts[1]))
    return inverse(op)
