"""Vectorized GF(2^n) kernels on bit-packed row vectors.

A length-L row vector over GF(2^n) is packed into one integer code with
entry 0 in the highest bits, so numeric order on codes equals
lexicographic order on coordinate tuples.  Addition of vectors is XOR of
codes; row-times-matrix products and scalar multiples become single
table lookups, which is what makes the million-element group scans cheap.

All functions are pure; callers partition element ranges into chunks and
combine results with min/sum reductions.
"""

from __future__ import annotations

import numpy as np


def chunks(n, size):
    for i in range(0, n, size):
        yield slice(i, min(i + size, n))


def isin_sorted(values, sorted_arr):
    """Membership mask of values in an ascending-sorted array."""
    pos = np.searchsorted(sorted_arr, values)
    pos_c = np.minimum(pos, len(sorted_arr) - 1)
    return (pos < len(sorted_arr)) & (sorted_arr[pos_c] == values)


class PackedOps:
    """Packing tables for length-L rows over one BinaryField."""

    def __init__(self, field, length):
        n = field.n
        if n * length > 16:
            raise ValueError("packed row would exceed 16 bits")
        self.field = field
        self.length = length
        self.row_bits = n * length
        self.ncodes = 1 << self.row_bits
        self.mask = (1 << n) - 1
        self.shifts = [n * (length - 1 - j) for j in range(length)]
        self.key_dtype = np.uint32 if 4 * self.row_bits <= 32 else np.uint64
        self._smul = None
        self._canon = None

    def pack(self, vecs):
        vecs = np.asarray(vecs, dtype=np.uint32)
        out = np.zeros(vecs.shape[:-1], dtype=np.uint32)
        for j, sh in enumerate(self.shifts):
            out |= vecs[..., j] << sh
        return out

    def unpack(self, codes):
        codes = np.asarray(codes, dtype=np.uint32)
        out = np.zeros(codes.shape + (self.length,), dtype=np.uint8)
        for j, sh in enumerate(self.shifts):
            out[..., j] = (codes >> sh) & self.mask
        return out

    @property
    def smul(self):
        """(q, ncodes) table: scalar times packed row."""
        if self._smul is None:
            q = self.field.order
            mul = self.field.mul_table
            codes = np.arange(self.ncodes, dtype=np.uint32)
            entries = [(codes >> sh) & self.mask for sh in self.shifts]
            out = np.zeros((q, self.ncodes), dtype=np.uint32)
            for s in range(q):
                acc = np.zeros(self.ncodes, dtype=np.uint32)
                for sh, e in zip(self.shifts, entries):
                    acc ^= mul[s, e].astype(np.uint32) << sh
                out[s] = acc
            out.setflags(write=False)
            self._smul = out
        return self._smul

    @property
    def canon(self):
        """Projective canonicalisation: scale so the leftmost nonzero entry
        is 1; zero maps to zero."""
        if self._canon is None:
            codes = np.arange(self.ncodes, dtype=np.uint32)
            entries = self.unpack(codes)
            first = np.zeros(self.ncodes, dtype=np.uint8)
            for j in range(self.length):
                sel = (first == 0) & (entries[:, j] != 0)
                first[sel] = entries[sel, j]
            inv = np.zeros(self.field.order, dtype=np.uint8)
            inv[1:] = self.field.inv_table[1:]
            out = self.smul[inv[first], codes]
            out.setflags(write=False)
            self._canon = out
        return self._canon

    def rmul_table(self, B):
        """(ncodes,) table mapping packed row v to packed v @ B."""
        B = np.asarray(B, dtype=np.uint8)
        mul = self.field.mul_table
        q = self.field.order
        contrib = np.zeros((self.length, q), dtype=np.uint32)
        for j in range(self.length):
            contrib[j] = self.pack(mul[np.arange(q)[:, None], B[j][None, :]])
        codes = np.arange(self.ncodes, dtype=np.uint32)
        acc = np.zeros(self.ncodes, dtype=np.uint32)
        for j, sh in enumerate(self.shifts):
            acc ^= contrib[j][(codes >> sh) & self.mask]
        return acc

    def pack_keys(self, rows):
        rows = np.asarray(rows)
        keys = np.zeros(rows.shape[0], dtype=self.key_dtype)
        for i in range(rows.shape[1]):
            keys |= rows[:, i].astype(self.key_dtype) << (self.row_bits * (rows.shape[1] - 1 - i))
        return keys

    def unpack_keys(self, keys, nrows=4):
        rows = np.zeros((len(keys), nrows), dtype=np.uint32)
        mask = self.ncodes - 1
        for i in range(nrows):
            rows[:, i] = (keys >> (self.row_bits * (nrows - 1 - i))) & mask
        return rows


def batch_matmul(mul, A, B):
    """Exact product over GF(2^n) via the field's q x q table.

    A is (N, r, s); B is either a fixed (s, t) matrix or a per-element
    (N, s, t) batch.  Returns (N, r, t).  Callers chunk N.
    """

    if B.ndim == 2:
        prod = mul[A[:, :, :, None], B[None, None, :, :]]
    else:
        prod = mul[A[:, :, :, None], B[:, None, :, :]]
    return np.bitwise_xor.reduce(prod, axis=2)


def batch_matmul_left(mul, C, B):
    """Fixed (r, s) matrix times per-element (N, s, t) batch."""
    prod = mul[C[None, :, :, None], B[:, None, :, :]]
    return np.bitwise_xor.reduce(prod, axis=2)


def batch_exterior_square(mul, mats, pairs):
    """Exterior-square matrices of a (N, 4, 4) batch on the wedge-pair
    basis; characteristic 2, so the sign terms are XORs."""
    n = mats.shape[0]
    out = np.empty((n, len(pairs), len(pairs)), dtype=np.uint8)
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            out[:, a, b] = mul[mats[:, i, k], mats[:, j, l]] ^ mul[mats[:, i, l], mats[:, j, k]]
    return out


def closure(ops: PackedOps, gen_mats, limit, max_batch_rows=1 << 16):
    """Worklist closure of the generated matrix group.

    gen_mats is (G, 4, 4) uint8.  Expands pending elements in chunks,
    right-multiplying by every generator through packed row tables, and
    deduplicates with sorted-key set algebra.  Returns (rows, keys) in
    discovery order, identity first; raises if the group grows past limit.
    """

    gen_tables = [ops.rmul_table(B) for B in np.asarray(gen_mats, dtype=np.uint8)]
    ident = ops.pack(np.eye(4, dtype=np.uint8)).reshape(1, 4)
    id_key = ops.pack_keys(ident)
    seen = id_key.copy()
    order = [id_key.copy()]
    total = 1
    pending = [ident]
    while pending:
        rows = pending.pop()
        if rows.shape[0] > max_batch_rows:
            pending.append(rows[max_batch_rows:])
            rows = rows[:max_batch_rows]
        produced = np.concatenate(
            [ops.pack_keys(np.stack([t[rows[:, i]] for i in range(4)], axis=1)) for t in gen_tables]
        )
        cand = np.unique(produced)
        fresh = cand[~isin_sorted(cand, seen)]
        if fresh.size == 0:
            continue
        total += fresh.size
        if total > limit:
            raise RuntimeError(f"closure exceeded the limit {limit}")
        seen = np.union1d(seen, fresh)
        order.append(fresh)
        pending.append(ops.unpack_keys(fresh))
    keys = np.concatenate(order)
    return ops.unpack_keys(keys), keys


def fixed_counts(ops: PackedOps, rows, point_codes):
    """Per-element count of canonical projective points fixed setwise.

    rows is (N, 4) packed; point_codes the (m,) canonical codes.  For each
    point <v>, the image code of v . g is assembled from scalar-multiple
    tables of g's rows and canonicalised; a point is fixed iff the
    canonical image equals the point itself.
    """

    smul = ops.smul
    canon = ops.canon
    pts = ops.unpack(point_codes)
    counts = np.zeros(rows.shape[0], dtype=np.int16)
    for code, v in zip(point_codes, pts):
        img = None
        for k in range(4):
            if v[k] == 0:
                continue
            term = smul[v[k]][rows[:, k]]
            img = term if img is None else img ^ term
        counts += canon[img] == code
    return counts


def perm_tables(ops: PackedOps, rows, point_codes, out=None):
    """(N, m) permutation images (point indices) of the projective action."""
    smul = ops.smul
    canon = ops.canon
    pts = ops.unpack(point_codes)
    rank = np.full(ops.ncodes, -1, dtype=np.int32)
    rank[point_codes] = np.arange(len(point_codes))
    if out is None:
        out = np.zeros((rows.shape[0], len(point_codes)), dtype=np.min_scalar_type(len(point_codes) - 1))
    for j, v in enumerate(pts):
        img = None
        for k in range(4):
            if v[k] == 0:
                continue
            term = smul[v[k]][rows[:, k]]
            img = term if img is None else img ^ term
        out[:, j] = rank[canon[img]]
    return out


def rank_one_flags(ops: PackedOps, diff_rows):
    """True where the packed (N, 4) row sets span exactly one dimension:
    some row nonzero and every row a scalar multiple of the first
    nonzero one."""
    smul = ops.smul
    q = ops.field.order
    nz = diff_rows != 0
    any_nz = nz.any(axis=1)
    first_idx = np.argmax(nz, axis=1)
    lead = diff_rows[np.arange(diff_rows.shape[0]), first_idx]
    ok = any_nz.copy()
    for k in range(4):
        row = diff_rows[:, k]
        prop = row == 0
        for s in range(1, q):
            prop |= row == smul[s][lead]
        ok &= prop
    return ok
