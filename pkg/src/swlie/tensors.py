"""Dense tensors over exact scalars with explicit index variance.

A tensor stores dim**rank entries in row-major order together with a
variance string: 'u' for a contravariant slot, 'l' for a covariant one.
Contractions check variance; raising and lowering go through a Metric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .scalars import (
    Polynomial,
    Scalar,
    ScalarError,
    scalar_add,
    scalar_is_zero,
    scalar_mul,
    scalar_neg,
    scalar_sub,
)


class VarianceError(ValueError):
    """Contraction or slot operation with incompatible variance."""


def _check_variance(variance: str) -> str:
    if not all(ch in "ul" for ch in variance):
        raise VarianceError(f"variance must be over 'u'/'l', got {variance!r}")
    return variance


@dataclass(frozen=True)
class Tensor:
    dim: int
    variance: str
    data: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        _check_variance(self.variance)
        if len(self.data) != self.dim ** len(self.variance):
            raise ValueError(
                f"need {self.dim ** len(self.variance)} entries for "
                f"dim {self.dim} variance {self.variance!r}, got {len(self.data)}"
            )

    @property
    def rank(self) -> int:
        return len(self.variance)

    def _offset(self, idx: tuple[int, ...]) -> int:
        offset = 0
        for i in idx:
            if not 0 <= i < self.dim:
                raise IndexError(f"index {i} out of range for dim {self.dim}")
            offset = offset * self.dim + i
        return offset

    def item(self, *idx: int) -> Scalar:
        if len(idx) != self.rank:
            raise IndexError(f"need {self.rank} indices, got {len(idx)}")
        return self.data[self._offset(idx)]

    def indices(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(range(self.dim), repeat=self.rank)

    # --- constructors ---

    @staticmethod
    def from_function(
        dim: int, variance: str, fn: Callable[[tuple[int, ...]], Scalar]
    ) -> "Tensor":
        _check_variance(variance)
        data = tuple(fn(idx) for idx in itertools.product(range(dim), repeat=len(variance)))
        return Tensor(dim, variance, data)

    @staticmethod
    def from_nested(variance: str, nested: object, dim: int | None = None) -> "Tensor":
        rank = len(_check_variance(variance))
        if rank == 0:
            return Tensor(dim or 3, variance, (nested,))  # type: ignore[arg-type]
        probe = nested
        sizes = []
        for _ in range(rank):
            if not isinstance(probe, (list, tuple)):
                raise ValueError("nested data shallower than variance")
            sizes.append(len(probe))
            probe = probe[0]
        if len(set(sizes)) != 1:
            raise ValueError(f"ragged nested data with sizes {sizes}")
        d = sizes[0] if dim is None else dim
        if sizes[0] != d:
            raise ValueError(f"nested data size {sizes[0]} != dim {d}")

        def get(idx: tuple[int, ...]) -> Scalar:
            node = nested
            for i in idx:
                node = node[i]  # type: ignore[index]
            if isinstance(node, (list, tuple)):
                raise ValueError("nested data deeper than variance")
            return node  # type: ignore[return-value]

        return Tensor.from_function(d, variance, get)

    @staticmethod
    def zeros(dim: int, variance: str) -> "Tensor":
        _check_variance(variance)
        return Tensor(dim, variance, (Fraction(0),) * dim ** len(variance))

    @staticmethod
    def delta(dim: int) -> "Tensor":
        return Tensor.from_function(
            dim, "ul", lambda idx: Fraction(1 if idx[0] == idx[1] else 0)
        )

    def to_nested(self) -> object:
        if self.rank == 0:
            return self.data[0]

        def build(prefix: tuple[int, ...]) -> object:
            if len(prefix) == self.rank:
                return self.data[self._offset(prefix)]
            return [build(prefix + (i,)) for i in range(self.dim)]

        return build(())

    # --- algebra ---

    def map(self, fn: Callable[[Scalar], Scalar]) -> "Tensor":
        return Tensor(self.dim, self.variance, tuple(fn(x) for x in self.data))

    def _require_compatible(self, other: "Tensor") -> None:
        if self.dim != other.dim or self.variance != other.variance:
            raise VarianceError(
                f"incompatible tensors: dim/variance ({self.dim},{self.variance!r})"
                f" vs ({other.dim},{other.variance!r})"
            )

    def add(self, other: "Tensor") -> "Tensor":
        self._require_compatible(other)
        return Tensor(
            self.dim,
            self.variance,
            tuple(scalar_add(a, b) for a, b in zip(self.data, other.data)),
        )

    def sub(self, other: "Tensor") -> "Tensor":
        self._require_compatible(other)
        return Tensor(
            self.dim,
            self.variance,
            tuple(scalar_sub(a, b) for a, b in zip(self.data, other.data)),
        )

    def neg(self) -> "Tensor":
        return self.map(scalar_neg)

    def scale(self, factor: Scalar) -> "Tensor":
        return self.map(lambda x: scalar_mul(factor, x))

    def is_zero(self) -> bool:
        return all(scalar_is_zero(x) for x in self.data)

    def equals(self, other: "Tensor") -> bool:
        self._require_compatible(other)
        return self.sub(other).is_zero()

    def contract(self, slot_a: int, slot_b: int) -> "Tensor":
        """Trace over one 'u' and one 'l' slot."""
        if slot_a == slot_b:
            raise VarianceError("cannot contract a slot with itself")
        va, vb = self.variance[slot_a], self.variance[slot_b]
        if {va, vb} != {"u", "l"}:
            raise VarianceError(
                f"contraction needs one 'u' and one 'l' slot, got {va!r},{vb!r}"
            )
        keep = [s for s in range(self.rank) if s not in (slot_a, slot_b)]
        new_variance = "".join(self.variance[s] for s in keep)

        def entry(idx: tuple[int, ...]) -> Scalar:
            total: Scalar = Fraction(0)
            for k in range(self.dim):
                full = [0] * self.rank
                for pos, s in enumerate(keep):
                    full[s] = idx[pos]
                full[slot_a] = k
                full[slot_b] = k
                total = scalar_add(total, self.data[self._offset(tuple(full))])
            return total

        return Tensor.from_function(self.dim, new_variance, entry)

    def tensor_product(self, other: "Tensor") -> "Tensor":
        if self.dim != other.dim:
            raise VarianceError("tensor product needs equal dims")

        def entry(idx: tuple[int, ...]) -> Scalar:
            return scalar_mul(
                self.data[self._offset(idx[: self.rank])],
                other.data[other._offset(idx[self.rank :])],
            )

        return Tensor.from_function(self.dim, self.variance + other.variance, entry)

    def transpose(self, order: Sequence[int]) -> "Tensor":
        if sorted(order) != list(range(self.rank)):
            raise VarianceError(f"invalid slot permutation {order!r}")
        variance = "".join(self.variance[s] for s in order)

        def entry(idx: tuple[int, ...]) -> Scalar:
            src = [0] * self.rank
            for pos, s in enumerate(order):
                src[s] = idx[pos]
            return self.data[self._offset(tuple(src))]

        return Tensor.from_function(self.dim, variance, entry)

    def scalar(self) -> Scalar:
        if self.rank != 0:
            raise VarianceError(f"rank {self.rank} tensor is not a scalar")
        return self.data[0]

    # --- symmetry ---

    def sym_part(self) -> "Tensor":
        return self._symmetrize(signed=False)

    def antisym_part(self) -> "Tensor":
        return self._symmetrize(signed=True)

    def _symmetrize(self, signed: bool) -> "Tensor":
        if len(set(self.variance)) > 1:
            raise VarianceError("symmetrization needs uniform variance")
        perms = list(itertools.permutations(range(self.rank)))
        weight = Fraction(1, len(perms))

        def parity(perm: tuple[int, ...]) -> int:
            sign = 1
            seen = [False] * len(perm)
            for start in range(len(perm)):
                if seen[start]:
                    continue
                length = 0
                j = start
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
            return sign

        def entry(idx: tuple[int, ...]) -> Scalar:
            total: Scalar = Fraction(0)
            for perm in perms:
                permuted = tuple(idx[p] for p in perm)
                value = self.data[self._offset(permuted)]
                if signed and parity(perm) < 0:
                    value = scalar_neg(value)
                total = scalar_add(total, value)
            return scalar_mul(weight, total)

        return Tensor.from_function(self.dim, self.variance, entry)


class Metric:
    """Nondegenerate symmetric bilinear form with cached exact inverse."""

    def __init__(self, matrix: Tensor) -> None:
        if matrix.variance != "ll" or matrix.rank != 2:
            raise VarianceError("metric must be a rank-2 covariant tensor")
        for i in range(matrix.dim):
            for j in range(i):
                if not scalar_is_zero(
                    scalar_sub(matrix.item(i, j), matrix.item(j, i))
                ):
                    raise ValueError("metric must be symmetric")
        self.g = matrix
        self.dim = matrix.dim
        det, inverse = _invert_symmetric(matrix)
        if scalar_is_zero(det):
            raise ValueError("metric is degenerate (zero determinant)")
        self.det = det
        self.g_inv = inverse

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar]]) -> "Metric":
        return Metric(Tensor.from_nested("ll", [list(r) for r in rows]))

    def signature(self) -> tuple[int, int] | None:
        """(positive, negative) inertia for numeric metrics; None if symbolic."""
        rows = [
            [self.g.item(i, j) for j in range(self.dim)] for i in range(self.dim)
        ]
        for row in rows:
            for x in row:
                if isinstance(x, Polynomial):
                    if not x.is_constant():
                        return None
        mat = [[Fraction(_as_fraction(x)) for x in row] for row in rows]
        pos = neg = 0
        for _ in range(self.dim):
            pivot_idx = next(
                (i for i in range(len(mat)) if mat[i][i] != 0),
                None,
            )
            if pivot_idx is None:
                found = None
                for i in range(len(mat)):
                    for j in range(i + 1, len(mat)):
                        if mat[i][j] != 0:
                            found = (i, j)
                            break
                    if found:
                        break
                if found is None:
                    break
                i, j = found
                for k in range(len(mat)):
                    mat[i][k] += mat[j][k]
                for k in range(len(mat)):
                    mat[k][i] += mat[k][j]
                pivot_idx = i
            p = mat[pivot_idx][pivot_idx]
            if p > 0:
                pos += 1
            else:
                neg += 1
            others = [i for i in range(len(mat)) if i != pivot_idx]
            reduced = []
            for i in others:
                factor = mat[i][pivot_idx] / p
                reduced.append(
                    [
                        mat[i][j] - factor * mat[pivot_idx][j]
                        for j in others
                    ]
                )
            mat = reduced
            if not mat:
                break
        return pos, neg

    def raise_slot(self, tensor: Tensor, slot: int) -> Tensor:
        return self._move(tensor, slot, "l", "u", self.g_inv)

    def lower_slot(self, tensor: Tensor, slot: int) -> Tensor:
        return self._move(tensor, slot, "u", "l", self.g)

    def _move(
        self, tensor: Tensor, slot: int, need: str, becomes: str, form: Tensor
    ) -> Tensor:
        if not 0 <= slot < tensor.rank:
            raise VarianceError(f"slot {slot} out of range")
        if tensor.variance[slot] != need:
            raise VarianceError(
                f"slot {slot} has variance {tensor.variance[slot]!r}, needs {need!r}"
            )
        variance = (
            tensor.variance[:slot] + becomes + tensor.variance[slot + 1 :]
        )

        def entry(idx: tuple[int, ...]) -> Scalar:
            total: Scalar = Fraction(0)
            for k in range(tensor.dim):
                src = idx[:slot] + (k,) + idx[slot + 1 :]
                total = scalar_add(
                    total,
                    scalar_mul(form.item(idx[slot], k), tensor.data[tensor._offset(src)]),
                )
            return total

        return Tensor.from_function(tensor.dim, variance, entry)

    def flip_all(self, tensor: Tensor) -> Tensor:
        out = tensor
        for slot in range(tensor.rank):
            if out.variance[slot] == "l":
                out = self.raise_slot(out, slot)
            else:
                out = self.lower_slot(out, slot)
        return out

    def full_inner(self, a: Tensor, b: Tensor) -> Scalar:
        """Complete contraction <a, b>: every slot of b is flipped via the
        metric, then paired against the matching slot of a."""
        a._require_compatible(b)
        flipped = self.flip_all(b)
        total: Scalar = Fraction(0)
        for offset, value in enumerate(a.data):
            total = scalar_add(total, scalar_mul(value, flipped.data[offset]))
        return total

    def norm_squared(self, a: Tensor) -> Scalar:
        return self.full_inner(a, a)

    def vector_inner(self, v: Tensor, w: Tensor) -> Scalar:
        if v.variance != "u" or w.variance != "u":
            raise VarianceError("vector_inner takes contravariant vectors")
        total: Scalar = Fraction(0)
        for i in range(self.dim):
            for j in range(self.dim):
                total = scalar_add(
                    total,
                    scalar_mul(self.g.item(i, j), scalar_mul(v.item(i), w.item(j))),
                )
        return total


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Polynomial):
        return x.constant_value()
    if isinstance(x, float):
        raise ScalarError("expected exact scalar")
    return Fraction(x)


def _invert_symmetric(matrix: Tensor) -> tuple[Scalar, Tensor]:
    """Determinant and inverse (as a 'uu' tensor) via adjugate.

    Polynomial entries are supported when every adjugate cofactor is exactly
    divisible by the determinant; otherwise the inverse is not polynomial and
    an ExactDivisionError is raised.
    """
    n = matrix.dim
    rows = [[matrix.item(i, j) for j in range(n)] for i in range(n)]

    def minor_det(excl_r: int, excl_c: int) -> Scalar:
        sub = [
            [rows[i][j] for j in range(n) if j != excl_c]
            for i in range(n)
            if i != excl_r
        ]
        return _det(sub)

    det = _det(rows)
    if scalar_is_zero(det):
        return det, Tensor.zeros(n, "uu")
    cof = [
        [
            scalar_mul(Fraction((-1) ** (i + j)), minor_det(i, j))
            for j in range(n)
        ]
        for i in range(n)
    ]

    def divide(value: Scalar) -> Scalar:
        if isinstance(det, Polynomial):
            num = value if isinstance(value, Polynomial) else Polynomial.const(det.variables, value)
            return num.divexact(det)
        if isinstance(value, Polynomial):
            return value * (1 / det)
        return Fraction(value) / det

    inv = Tensor.from_function(n, "uu", lambda idx: divide(cof[idx[1]][idx[0]]))
    return det, inv


def _det(rows: list[list[Scalar]]) -> Scalar:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return scalar_sub(
            scalar_mul(rows[0][0], rows[1][1]), scalar_mul(rows[0][1], rows[1][0])
        )
    total: Scalar = Fraction(0)
    for j in range(n):
        sub = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = scalar_mul(rows[0][j], _det(sub))
        if j % 2:
            term = scalar_neg(term)
        total = scalar_add(total, term)
    return total
