"""Exact sparse linear algebra over the field contract.

Vectors are dicts {column: nonzero scalar}.  Elimination is plain
Gauss-Jordan with unit pivots; over the rationals Fraction keeps every entry
reduced, which bounds coefficient growth at the sizes this engine meets.
"""

from __future__ import annotations

from .errors import EngineError


def vec_add(field, u: dict, v: dict, c=None):
    """u + c*v (c defaults to 1)."""
    out = dict(u)
    for k, x in v.items():
        y = x if c is None else field.mul(c, x)
        s = field.add(out.get(k, field.zero()), y)
        if field.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(field, u: dict, c):
    if field.is_zero(c):
        return {}
    return {k: field.mul(c, x) for k, x in u.items()}


class SparseMatrix:
    def __init__(self, nrows: int, ncols: int, field, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                self.add(r, c, v)

    def add(self, r, c, v):
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise EngineError("matrix index out of range")
        f = self.field
        s = f.add(self.entries.get((r, c), f.zero()), v)
        if f.is_zero(s):
            self.entries.pop((r, c), None)
        else:
            self.entries[(r, c)] = s

    def rows(self):
        out = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self):
        m = SparseMatrix(self.ncols, self.nrows, self.field)
        m.entries = {(c, r): v for (r, c), v in self.entries.items()}
        return m

    def apply(self, v: dict) -> dict:
        """Matrix times a column vector indexed by columns."""
        f = self.field
        out = {}
        for (r, c), x in self.entries.items():
            if c in v:
                s = f.add(out.get(r, f.zero()), f.mul(x, v[c]))
                if f.is_zero(s):
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def dump_coordinates(self) -> str:
        """`row col value` triplet text, for external verification."""
        lines = [f"{self.nrows} {self.ncols}"]
        for (r, c) in sorted(self.entries):
            lines.append(f"{r} {c} {self.field.format_scalar(self.entries[(r, c)])}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, {len(self.entries)} entries)"


class SubspaceBasis:
    """Reduced row-echelon basis of a subspace; canonical for the subspace."""

    def __init__(self, ambient: int, field, rows=(), pivots=()):
        self.ambient = ambient
        self.field = field
        self.rows = list(rows)
        self.pivots = list(pivots)

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        """Canonical representative of v modulo this subspace."""
        for k in v:
            if k >= self.ambient:
                raise EngineError("vector outside the ambient space")
        f = self.field
        out = dict(v)
        for row, piv in zip(self.rows, self.pivots):
            c = out.get(piv)
            if c is not None:
                out = vec_add(f, out, row, f.neg(c))
        return out

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceBasis)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"SubspaceBasis(dim {self.dim} in k^{self.ambient})"


def rref(field, vectors, ambient):
    """Reduced row echelon form of a list of dict-vectors."""
    basis_rows = []
    pivots = []
    for v in vectors:
        v = dict(v)
        for row, piv in zip(basis_rows, pivots):
            c = v.get(piv)
            if c is not None:
                v = vec_add(field, v, row, field.neg(c))
        if not v:
            continue
        piv = min(v)
        v = vec_scale(field, v, field.inv(v[piv]))
        for i, row in enumerate(basis_rows):
            c = row.get(piv)
            if c is not None:
                basis_rows[i] = vec_add(field, row, v, field.neg(c))
        basis_rows.append(v)
        pivots.append(piv)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return SubspaceBasis(
        ambient, field, [basis_rows[i] for i in order], [pivots[i] for i in order]
    )


class EchelonResult:
    __slots__ = ("rank", "row_space", "kernel")

    def __init__(self, rank, row_space, kernel):
        self.rank = rank
        self.row_space = row_space
        self.kernel = kernel


def echelon(m: SparseMatrix) -> EchelonResult:
    """Exact rank, RREF row-space basis, and RREF kernel basis of m."""
    f = m.field
    row_space = rref(f, m.rows(), m.ncols)
    pivset = set(row_space.pivots)
    free_cols = [c for c in range(m.ncols) if c not in pivset]
    kernel_vectors = []
    for c in free_cols:
        v = {c: f.one()}
        for row, piv in zip(row_space.rows, row_space.pivots):
            x = row.get(c)
            if x is not None:
                v[piv] = f.neg(x)
        kernel_vectors.append(v)
    kernel = rref(f, kernel_vectors, m.ncols)
    return EchelonResult(row_space.dim, row_space, kernel)


def column_space(m: SparseMatrix) -> SubspaceBasis:
    """Image of the map v -> m v, as a subspace of k^nrows."""
    return rref(m.field, m.transpose().rows(), m.nrows)


def quotient_coords(v: dict, image: SubspaceBasis) -> dict:
    """Canonical coordinates of v + image: reduce v against the echelon basis."""
    return image.reduce(v)
