"""Permutation codes from group representations.

A group element t with permutation image rho(t) is encoded as the passive
form (1^rho(t), ..., q^rho(t)); a twisted code concatenates the passive
forms over an ordered list of representations.  Minimum distance is
computed two independent ways: a support-sum scan over group elements
(valid whenever the joint kernel is trivial) and a brute-force pairwise
scan over codewords, kept as the oracle.

Permutations are 0-based numpy index arrays internally; codeword symbols
are 1-based, matching the codeword file format.
"""

from __future__ import annotations

import numpy as np

from .linalg import Matrix

FORMAT_MAGIC = "# twistcode v1"


class NontrivialKernelError(ValueError):
    """The joint kernel of the representation list is nontrivial, so the
    support-sum formula does not compute the code's minimum distance."""


class CodewordFileError(ValueError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IndexedDomain:
    """Ordered point labels; index lookup inverts position lookup."""

    def __init__(self, points):
        self.points = list(points)
        self._index = {pt: i for i, pt in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise ValueError("domain points are not pairwise distinct")

    @property
    def size(self):
        return len(self.points)

    def index(self, label):
        return self._index[label]

    def __getitem__(self, i):
        return self.points[i]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def support_size(perm) -> int:
    """Number of moved points of a permutation (0-based image array)."""
    perm = np.asarray(perm)
    return int((perm != np.arange(len(perm))).sum())


def compose(a, b):
    """Permutation 'a then b': composed[j] = b[a[j]]."""
    return np.asarray(b)[np.asarray(a)]


class EnumeratedGroup:
    """Explicit deduplicated element list of a matrix group, identity at
    index 0; elements are stored as one (N, d, d) uint8 array."""

    def __init__(self, field, elements, keys=None):
        elements = np.ascontiguousarray(elements, dtype=np.uint8)
        if elements.ndim != 3 or elements.shape[1] != elements.shape[2]:
            raise ValueError("elements must be an (N, d, d) array")
        d = elements.shape[1]
        if not (elements[0] == np.eye(d, dtype=np.uint8)).all():
            raise ValueError("identity must sit at index 0")
        elements.setflags(write=False)
        self.field = field
        self.elements = elements
        self.dim = d
        self.keys = keys
        self._sorted = None

    def __len__(self):
        return self.elements.shape[0]

    def matrix(self, i) -> Matrix:
        return Matrix(self.field, self.elements[i])

    def index_of_key(self, key):
        if self.keys is None:
            raise ValueError("group was built without content keys")
        if self._sorted is None:
            order = np.argsort(self.keys, kind="stable")
            self._sorted = (self.keys[order], order)
        skeys, order = self._sorted
        pos = int(np.searchsorted(skeys, key))
        if pos == len(skeys) or skeys[pos] != key:
            raise KeyError(key)
        return int(order[pos])


def mulclose(generators, limit=None):
    """Closure of a list of Matrix generators under multiplication.

    Plain dict-based breadth-first closure; intended as the independent
    order oracle for small groups.  Returns matrices in discovery order
    with the identity first.
    """

    if not generators:
        raise ValueError("need at least one generator")
    field = generators[0].field
    n = generators[0].rows
    ident = Matrix.identity(field, n)
    seen = {ident: 0}
    order = [ident]
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in generators:
                h = g * s
                if h not in seen:
                    seen[h] = len(order)
                    order.append(h)
                    new.append(h)
                    if limit is not None and len(order) > limit:
                        raise RuntimeError(f"closure exceeded limit {limit}")
        frontier = new
    return order


class Representation:
    """Permutation representation of an enumerated group: one image array
    per element index, over a fixed point domain."""

    def __init__(self, group, perms, domain=None):
        perms = np.ascontiguousarray(perms)
        if perms.ndim != 2 or perms.shape[0] != len(group):
            raise ValueError("need one permutation per group element")
        q = perms.shape[1]
        if not (perms[0] == np.arange(q)).all():
            raise ValueError("identity element must act as the identity permutation")
        if perms.size <= 1 << 22 and not (np.sort(perms, axis=1) == np.arange(q)).all():
            raise ValueError("some image array is not a bijection")
        perms.setflags(write=False)
        self.group = group
        self.perms = perms
        self.domain = domain

    @property
    def q(self):
        return self.perms.shape[1]

    def perm(self, i):
        return self.perms[i]

    def support_sizes(self):
        return (self.perms != np.arange(self.q)).sum(axis=1)

    def kernel_mask(self):
        return (self.perms == np.arange(self.q)).all(axis=1)

    def minimal_degree(self):
        sizes = self.support_sizes()
        nontrivial = sizes[~self.kernel_mask()]
        if nontrivial.size == 0:
            raise NontrivialKernelError("representation is trivial")
        return int(nontrivial.min())


class Code:
    """Deduplicated codeword list over alphabet {1..q}; rows are 1-based."""

    def __init__(self, words, q):
        words = np.ascontiguousarray(words)
        if words.ndim != 2:
            raise ValueError("words must be a 2-D array")
        if words.size and (words.min() < 1 or words.max() > q):
            raise ValueError("codeword symbol out of alphabet range")
        _, first = np.unique(words, axis=0, return_index=True)
        words = words[np.sort(first)]
        words.setflags(write=False)
        self.words = words
        self.q = q

    @property
    def size(self):
        return self.words.shape[0]

    @property
    def length(self):
        return self.words.shape[1]

    def __len__(self):
        return self.size


def hamming_distance(a, b) -> int:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch {a.shape} vs {b.shape}")
    return int((a != b).sum())


def codeword_from_element(rep: Representation, i: int):
    """Passive form of element i: symbol j is the 1-based image of point j."""
    return rep.perms[i].astype(np.min_scalar_type(rep.q)) + 1


def build_code(group, rep: Representation) -> Code:
    dtype = np.min_scalar_type(rep.q)
    return Code(rep.perms.astype(dtype) + 1, rep.q)


def build_twisted_code(group, reps) -> Code:
    if len(reps) < 1:
        raise ValueError("need at least one representation")
    q = reps[0].q
    if any(r.q != q for r in reps):
        raise ValueError("representations act on domains of different sizes")
    dtype = np.min_scalar_type(q)
    words = np.concatenate([r.perms.astype(dtype) + 1 for r in reps], axis=1)
    return Code(words, q)


def min_distance_pairwise(code: Code, chunk=64) -> int:
    """Exact minimum over all unordered codeword pairs; 0 if |C| <= 1."""
    W = code.words
    n = code.size
    if n <= 1:
        return 0
    best = code.length + 1
    for i0 in range(0, n, chunk):
        blk = W[i0 : i0 + chunk]
        # distances to all later codewords, plus the in-block upper triangle
        d = (blk[:, None, :] != W[None, i0:, :]).sum(axis=2)
        ii, jj = np.triu_indices(blk.shape[0], k=1, m=d.shape[1])
        if ii.size:
            best = min(best, int(d[ii, jj].min()))
    return best


def distance_row(code: Code, i) -> np.ndarray:
    return (code.words != code.words[i]).sum(axis=1)


def check_distance_invariance(code: Code, anchors=None) -> bool:
    """True iff the distance distribution from a codeword is independent of
    the codeword.  anchors=None compares every codeword against the first;
    a list of indices checks just those (for codes too large to sweep)."""
    if code.size <= 1:
        return True
    ref = np.bincount(distance_row(code, 0), minlength=code.length + 1)
    idx = range(1, code.size) if anchors is None else anchors
    for i in idx:
        dist = np.bincount(distance_row(code, i), minlength=code.length + 1)
        if not (dist == ref).all():
            return False
    return True


def joint_kernel_mask(reps):
    mask = reps[0].kernel_mask()
    for r in reps[1:]:
        mask &= r.kernel_mask()
    return mask


def min_distance_by_support(group, reps) -> int:
    """Identity-anchored scan: min over non-identity t of the summed
    support sizes.  Raises NontrivialKernelError when the formula does not
    apply (some non-identity element acts trivially in every entry)."""
    kernel = joint_kernel_mask(reps)
    if kernel.sum() != 1:
        raise NontrivialKernelError(
            f"joint kernel has {int(kernel.sum())} elements; support scan does not equal delta"
        )
    total = sum(r.support_sizes() for r in reps)
    return int(total[1:].min()) if len(group) > 1 else 0


def repetition_lower_bound(group, reps) -> int:
    """min over rho of delta(Rep_r(C(T, rho))) = r * minimal degree of rho."""
    r = len(reps)
    return r * min(rep.minimal_degree() for rep in reps)


def check_code_size(group, reps, code: Code) -> bool:
    """|C| * |K| = |T| with K the joint kernel."""
    k = int(joint_kernel_mask(reps).sum())
    return code.size * k == len(group)


def letter_counts_constant(code: Code, r) -> bool:
    """Frequency permutation array property: every letter occurs exactly r
    times in every codeword."""
    if code.length != r * code.q:
        return False
    for row in code.words:
        if not (np.bincount(row, minlength=code.q + 1)[1:] == r).all():
            return False
    return True


def write_code(path, code: Code, family, params, r=1):
    """Codeword file format v1 (see README): two comment headers, then one
    codeword per line as 1-based integers."""
    param_str = " ".join(f"{k}={v}" for k, v in params.items())
    with open(path, "w") as fh:
        fh.write(FORMAT_MAGIC + "\n")
        fh.write(
            f"# family={family} {param_str} r={r} "
            f"q={code.q} length={code.length} size={code.size}\n"
        )
        for row in code.words:
            fh.write(" ".join(str(int(x)) for x in row) + "\n")


def read_code(path):
    """Parse a v1 codeword file; returns (Code, header dict).

    Malformed input raises CodewordFileError carrying the line number.
    """

    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != FORMAT_MAGIC:
        raise CodewordFileError(1, f"missing magic header {FORMAT_MAGIC!r}")
    if len(lines) < 2 or not lines[1].startswith("# "):
        raise CodewordFileError(2, "missing metadata header")
    meta = {}
    for tok in lines[1][2:].split():
        if "=" in tok:
            k, v = tok.split("=", 1)
            meta[k] = v
        else:
            meta.setdefault("family", tok)
    try:
        q = int(meta["q"])
        length = int(meta["length"])
    except (KeyError, ValueError) as exc:
        raise CodewordFileError(2, f"bad metadata header: {exc}") from exc
    rows = []
    for ln, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise CodewordFileError(ln, "non-integer symbol") from None
        if len(row) != length:
            raise CodewordFileError(ln, f"expected {length} symbols, got {len(row)}")
        if min(row) < 1 or max(row) > q:
            raise CodewordFileError(ln, f"symbol out of range 1..{q}")
        rows.append(row)
    if not rows:
        raise CodewordFileError(len(lines) + 1, "no codewords")
    words = np.asarray(rows, dtype=np.min_scalar_type(q))
    return Code(words, q), meta
