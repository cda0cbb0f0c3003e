"""Representations of knot DGAs and their characteristic algebras.

Three families live here.  Augmentations are the one-dimensional case and
get a dedicated backtracking search with deterministic enumeration order.
Matrix representations over F2 are searched for and verified with matrices
stored as tuples of row bitmasks (entry (i, j) is bit j of row i), and the
explicit two-dimensional homomorphism for maximal-tb negative torus knots
is built directly from the labeled front.  Finally, the nontriviality
witness for the three-generator quotient algebra is an operator action on
a countable basis v_0, v_1, ...; since the operators roughly double basis
indices, we truncate to N coordinates and track, per composed word, the
largest index whose image is still exact.

Everything is over F2.  Search routines never claim nonexistence: a failed
search within budget is inconclusive by design.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .chalg import RelationSet
from .dga import DGA, TorusLabeling
from .freealg import F2, NcPoly, parse, word_key

Mat = tuple[int, ...]

__all__ = [
    "MatRepAssignment",
    "TruncatedOp",
    "mat_identity",
    "mat_zero",
    "mat_mul",
    "mat_add",
    "decode_matrix",
    "encode_matrix",
    "evaluate_poly",
    "find_augmentations",
    "exhaustive_augmentations",
    "verify_matrix_rep",
    "search_matrix_rep",
    "torus_rep",
    "mat2_presentation_check",
    "build_R_truncated",
    "check_R_relations",
    "verify_R_relations",
    "RRelationCheck",
    "RRelationReport",
    "serialize_rep",
    "deserialize_rep",
]


# ---- dense matrices over F2, rows as bitmasks ----

def mat_zero(n: int) -> Mat:
    return (0,) * n


def mat_identity(n: int) -> Mat:
    return tuple(1 << i for i in range(n))


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(x ^ y for x, y in zip(a, b))


def mat_mul(a: Mat, b: Mat, n: int) -> Mat:
    out = []
    for row in a:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc ^= b[j]
            row >>= 1
            j += 1
        out.append(acc)
    return tuple(out)


def encode_matrix(m: Mat, n: int) -> int:
    """Row-major bit encoding; entry (0,0) is the least significant bit."""
    code = 0
    for i, row in enumerate(m):
        code |= row << (i * n)
    return code


def decode_matrix(code: int, n: int) -> Mat:
    mask = (1 << n) - 1
    return tuple((code >> (i * n)) & mask for i in range(n))


def evaluate_poly(p: NcPoly, images: Mapping[str, Mat], n: int) -> Mat:
    """Value of p under the algebra map sending generators to images, 1 to I."""
    if p.ring != F2:
        raise ValueError("matrix evaluation is defined over F2 only")
    acc = mat_zero(n)
    for word, coef in p.terms.items():
        if coef.get(0, 0) % 2 == 0:
            continue
        m = mat_identity(n)
        for g in word:
            img = images.get(g)
            if img is None:
                raise ValueError(f"no image for generator {g}")
            m = mat_mul(m, img, n)
        acc = mat_add(acc, m)
    return acc


@dataclass(frozen=True)
class MatRepAssignment:
    """Images of every generator of a presentation in Mat_n(F2)."""

    n: int
    images: Mapping[str, Mat]

    def __post_init__(self):
        for g, m in self.images.items():
            if len(m) != self.n or any(row >> self.n for row in m):
                raise ValueError(f"image of {g} is not {self.n}x{self.n}")


# ---- extracting the constraint system from a DGA or a relation set ----

def _constraints(target: Union[DGA, RelationSet]) -> tuple[tuple[str, ...], list[NcPoly]]:
    if isinstance(target, DGA):
        pres = target.presentation
        rels = [target.d(g) for g in pres.generators]
    elif isinstance(target, RelationSet):
        pres = target.presentation
        rels = [v for _, v in target.relations]
    else:
        raise TypeError(f"expected DGA or RelationSet, got {type(target).__name__}")
    if pres.ring != F2:
        raise ValueError("representations are supported over F2 only")
    return tuple(pres.generators), rels


def verify_matrix_rep(target: Union[DGA, RelationSet], rho: MatRepAssignment) -> bool:
    """Check that every relation of the target is killed by the assignment."""
    gens, rels = _constraints(target)
    missing = [g for g in gens if g not in rho.images]
    if missing:
        raise ValueError(f"no image for generator {missing[0]}")
    zero = mat_zero(rho.n)
    return all(evaluate_poly(r, rho.images, rho.n) == zero for r in rels)


# ---- augmentations (the n = 1 case, collected exhaustively) ----

def _compile(gens: tuple[str, ...], rels: list[NcPoly]):
    """Relations as (constant, words-over-positions), grouped by last-needed slot.

    schedule[i] lists the relations whose support closes once generator i is
    assigned; constant or empty relations get slot -1 and are checked upfront.
    """
    pos = {g: i for i, g in enumerate(gens)}
    compiled = []
    for r in rels:
        const = 0
        words = []
        top = -1
        for word, coef in r.terms.items():
            if coef.get(0, 0) % 2 == 0:
                continue
            if not word:
                const ^= 1
                continue
            w = tuple(pos[g] for g in word)
            top = max(top, max(w))
            words.append(w)
        compiled.append((const, tuple(words), top))
    schedule: list[list[int]] = [[] for _ in gens]
    upfront: list[int] = []
    for k, (_, _, top) in enumerate(compiled):
        if top < 0:
            upfront.append(k)
        else:
            schedule[top].append(k)
    return compiled, schedule, upfront


def _aug_value(compiled_rel, values) -> int:
    const, words, _ = compiled_rel
    acc = const
    for w in words:
        prod = 1
        for i in w:
            if not values[i]:
                prod = 0
                break
        acc ^= prod
    return acc


def find_augmentations(g: DGA, graded: bool = False) -> list[dict[str, int]]:
    """All algebra maps to F2 killing every differential, in lexicographic order.

    With graded set, generators of nonzero degree are pinned to 0 so the
    surviving maps are the graded augmentations.
    """
    gens, rels = _constraints(g)
    compiled, schedule, upfront = _compile(gens, rels)
    for k in upfront:
        if _aug_value(compiled[k], ()):
            return []
    forced = [False] * len(gens)
    if graded:
        pres = g.presentation
        forced = [pres.degree_of(name) != 0 for name in gens]
    values = [0] * len(gens)
    found: list[dict[str, int]] = []

    def walk(i: int):
        if i == len(gens):
            found.append({g_: values[j] for j, g_ in enumerate(gens)})
            return
        for v in (0, 1):
            if v and forced[i]:
                break
            values[i] = v
            if all(_aug_value(compiled[k], values) == 0 for k in schedule[i]):
                walk(i + 1)
        values[i] = 0

    walk(0)
    return found


def exhaustive_augmentations(g: DGA) -> list[dict[str, int]]:
    """Brute-force oracle: filter all 2^n assignments.  Refuses n > 20."""
    gens, rels = _constraints(g)
    if len(gens) > 20:
        raise ValueError(f"{len(gens)} generators is too many for brute force")
    compiled, _, _ = _compile(gens, rels)
    out = []
    for values in itertools.product((0, 1), repeat=len(gens)):
        if all(_aug_value(c, values) == 0 for c in compiled):
            out.append(dict(zip(gens, values)))
    return out


# ---- matrix representation search ----

def search_matrix_rep(g: Union[DGA, RelationSet], n: int, budget: int = 10 ** 8) -> Optional[MatRepAssignment]:
    """First Mat_n(F2) representation in deterministic order, or None.

    Generators are assigned in presentation order, candidate matrices in
    increasing row-major bit encoding, and every relation is checked as soon
    as its support is complete.  Exhausting the node budget returns None,
    which is inconclusive: nonexistence claims are the business of
    certificate replay, never of this search.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    gens, rels = _constraints(g)
    compiled, schedule, upfront = _compile(gens, rels)
    for k in upfront:
        const, _, _ = compiled[k]
        if const:
            return None
    # matrices live as their row-major codes; for small n a full product
    # table turns each word step into one lookup
    count = 1 << (n * n)
    ident = encode_matrix(mat_identity(n), n)
    if n <= 3:
        mul = [[encode_matrix(mat_mul(decode_matrix(x, n), decode_matrix(y, n), n), n)
                for y in range(count)] for x in range(count)]
    else:
        mul = None
    images: list[int] = [0] * len(gens)
    nodes = 0

    def rel_value(k: int) -> int:
        const, words, _ = compiled[k]
        acc = ident if const else 0
        for w in words:
            m = ident
            if mul is not None:
                for i in w:
                    m = mul[m][images[i]]
                    if not m:
                        break
            else:
                mm = decode_matrix(m, n)
                for i in w:
                    mm = mat_mul(mm, decode_matrix(images[i], n), n)
                m = encode_matrix(mm, n)
            acc ^= m
        return acc

    def walk(i: int) -> Optional[bool]:
        # None bubbles up budget exhaustion, True a hit, False a dead end
        nonlocal nodes
        checks = schedule[i]
        for cand in range(count):
            nodes += 1
            if nodes > budget:
                return None
            images[i] = cand
            if all(rel_value(k) == 0 for k in checks):
                if i + 1 == len(gens):
                    return True
                hit = walk(i + 1)
                if hit or hit is None:
                    return hit
        images[i] = 0
        return False

    if not gens or walk(0):
        return MatRepAssignment(
            n, {g_: decode_matrix(images[j], n) for j, g_ in enumerate(gens)})
    return None


# ---- the explicit torus-knot homomorphism ----

def torus_rep(p: int, q: int, labeling: TorusLabeling) -> MatRepAssignment:
    """Two-dimensional representation of the T(p,-q) DGA from its labeling.

    Crossings x_{i,i+1} and y_{j,j+p-1} go to the upper-right elementary
    matrix, x_{1,p} and y_{j,j+1} to its transpose, everything else
    (including all right cusps) to zero.
    """
    a = (2, 0)
    b = (0, 1)
    zero = (0, 0)
    images: dict[str, Mat] = {}
    for i in range(1, p):
        if (i, i + 1) not in labeling.x:
            raise ValueError(f"labeling missing crossing x_({i},{i + 1})")
    if (1, p) not in labeling.x:
        raise ValueError(f"labeling missing crossing x_(1,{p})")
    for (i, j), name in labeling.x.items():
        if j == i + 1:
            images[name] = a
        elif (i, j) == (1, p):
            images[name] = b
        else:
            images[name] = zero
    for (i, j), name in labeling.y.items():
        if j == i + 1:
            images[name] = b
        elif j == i + p - 1:
            images[name] = a
        else:
            images[name] = zero
    for name in labeling.z.values():
        images[name] = zero
    return MatRepAssignment(2, images)


# ---- the 16-element presentation of Mat_2(F2) ----

_BASIS = ((), ("a",), ("b",), ("a", "b"))


def _reduce_word(word: tuple[str, ...]) -> frozenset:
    """Rewrite with aa -> 0, bb -> 0, ba -> 1 + ab; value is a set of basis words."""
    if word in _BASIS:
        return frozenset([word])
    for i in range(len(word) - 1):
        pair = word[i:i + 2]
        if pair in (("a", "a"), ("b", "b")):
            return frozenset()
        if pair == ("b", "a"):
            rest = word[:i] + word[i + 2:]
            swapped = word[:i] + ("a", "b") + word[i + 2:]
            return _reduce_word(rest) ^ _reduce_word(swapped)
    raise AssertionError(f"irreducible word {word} outside basis")


def mat2_presentation_check() -> bool:
    """Confirm that {a^2 = b^2 = 0, ab + ba = 1} presents the 2x2 matrix algebra.

    Exhaustive: the quotient is spanned by 1, a, b, ab, so its 16 subsets
    exhaust the elements; the map a -> E12, b -> E21 must be a bijective
    ring homomorphism onto Mat_2(F2).
    """
    n = 2
    mats = {(): mat_identity(n), ("a",): (2, 0), ("b",): (0, 1)}
    mats[("a", "b")] = mat_mul(mats[("a",)], mats[("b",)], n)
    if mat_add(mats[("a", "b")], mat_mul(mats[("b",)], mats[("a",)], n)) != mat_identity(n):
        return False
    if _reduce_word(("b", "a")) != frozenset([(), ("a", "b")]):
        return False

    def phi(elem: frozenset) -> Mat:
        m = mat_zero(n)
        for w in elem:
            m = mat_add(m, mats[w])
        return m

    elements = [frozenset(s) for r in range(5) for s in itertools.combinations(_BASIS, r)]
    if len(elements) != 16 or len({phi(e) for e in elements}) != 16:
        return False
    for x in elements:
        for y in elements:
            prod: frozenset = frozenset()
            for wx in x:
                for wy in y:
                    prod ^= _reduce_word(wx + wy)
            if phi(prod) != mat_mul(phi(x), phi(y), n):
                return False
    return True


# ---- truncated operators on span(v_0 .. v_{N-1}) ----

@dataclass(frozen=True)
class TruncatedOp:
    """Right-acting operator truncated to N coordinates.

    rows[i] is the image of v_i as a bitmask over v_0..v_{N-1}; basis
    vectors pushed past the truncation are silently dropped, so results are
    only trusted on v_0..v_{valid_domain}.  The affine bound index ->
    slope*index + offset dominates the operator's untruncated index growth
    and composes multiplicatively, which is what makes the bound cheap to
    maintain through words.
    """

    N: int
    rows: tuple[int, ...]
    slope: int
    offset: int

    def __post_init__(self):
        if len(self.rows) != self.N:
            raise ValueError("row count disagrees with truncation size")
        if self.slope < 1 or self.offset < 0:
            raise ValueError("growth bound must be monotone")

    @property
    def valid_domain(self) -> int:
        return min(self.N - 1, (self.N - 1 - self.offset) // self.slope)

    def then(self, other: "TruncatedOp") -> "TruncatedOp":
        """Composite acting by self first, then other."""
        if self.N != other.N:
            raise ValueError("mismatched truncation sizes")
        rows = []
        for mask in self.rows:
            acc = 0
            j = 0
            while mask:
                if mask & 1:
                    acc ^= other.rows[j]
                mask >>= 1
                j += 1
            rows.append(acc)
        # within the composed bound no intermediate index ever truncates,
        # because slopes are >= 1 and offsets >= 0
        return TruncatedOp(self.N, tuple(rows),
                           self.slope * other.slope,
                           other.slope * self.offset + other.offset)

    def __add__(self, other: "TruncatedOp") -> "TruncatedOp":
        if self.N != other.N:
            raise ValueError("mismatched truncation sizes")
        return TruncatedOp(self.N, tuple(x ^ y for x, y in zip(self.rows, other.rows)),
                           max(self.slope, other.slope),
                           max(self.offset, other.offset))

    def is_zero_on_domain(self) -> bool:
        return all(self.rows[i] == 0 for i in range(self.valid_domain + 1))

    def agrees_with(self, other: "TruncatedOp") -> bool:
        upto = min(self.valid_domain, other.valid_domain)
        return all(self.rows[i] == other.rows[i] for i in range(upto + 1))


def op_identity(N: int) -> TruncatedOp:
    return TruncatedOp(N, tuple(1 << i for i in range(N)), 1, 0)


def _op_from_map(N: int, fn, slope: int, offset: int) -> TruncatedOp:
    rows = []
    for i in range(N):
        mask = 0
        for j in fn(i):
            if j < N:
                mask |= 1 << j
        rows.append(mask)
    return TruncatedOp(N, tuple(rows), slope, offset)


def build_R_truncated(N: int) -> dict[str, TruncatedOp]:
    """The seven operators of the nontriviality witness, truncated to size N.

    f doubles indices, g doubles and shifts, p shifts down, s shifts up and
    doubles; a, b, c are the closed forms obtained by composing the block
    identifications of the even/odd splitting (tests re-derive them from
    the block maps directly).
    """
    if N < 8:
        raise ValueError("need N >= 8")
    ops = {
        "f": _op_from_map(N, lambda i: (2 * i,), 2, 0),
        "g": _op_from_map(N, lambda i: (2 * i + 1,), 2, 1),
        "p": _op_from_map(N, lambda i: (i - 1,) if i else (), 1, 0),
        "s": _op_from_map(N, lambda i: (i + 1, 2 * i + 2), 2, 2),
        # the two-case diagram formulas collapse to uniform shifts: acting by
        # a sends v_m to v_{m-1} on both parities, and b sends v_m to
        # v_{m+1} + v_{2m+2}, so a and b agree with p and s pointwise
        "a": _op_from_map(N, lambda i: (i - 1,) if i else (), 1, 0),
        "b": _op_from_map(N, lambda i: (i + 1, 2 * i + 2), 2, 2),
        "c": _op_from_map(N, lambda i: (i // 2,) if i % 2 == 0 else (), 1, 0),
    }
    return ops


def evaluate_poly_ops(p: NcPoly, ops: Mapping[str, TruncatedOp], N: int) -> TruncatedOp:
    """Right action of a polynomial: leftmost letter acts first."""
    if p.ring != F2:
        raise ValueError("operator evaluation is defined over F2 only")
    acc = None
    for word, coef in sorted(p.terms.items(), key=lambda kv: word_key(kv[0])):
        if coef.get(0, 0) % 2 == 0:
            continue
        m = op_identity(N)
        for g in word:
            m = m.then(ops[g])
        acc = m if acc is None else acc + m
    return acc if acc is not None else TruncatedOp(N, (0,) * N, 1, 0)


_R_RELATIONS = (
    ("1 + c(1+ab) + ac(1+ba)", "1 + c + c.a.b + a.c + a.c.b.a"),
    ("(1+ba)c", "c + b.a.c"),
    ("1 + (1+ab)c", "1 + c + a.b.c"),
    ("1 + (1+ba)ac", "1 + a.c + b.a.a.c"),
)

_R_IDENTITIES = (
    # chains are in application order, so s applied after p realizes s o p
    ("s o p = f + 1", ("p", "s"), ("f", "")),
    ("p o g = f", ("g", "p"), ("f",)),
    ("p o s = g + 1", ("s", "p"), ("g", "")),
)


@dataclass(frozen=True)
class RRelationCheck:
    name: str
    checked_upto: int
    ok: bool


@dataclass(frozen=True)
class RRelationReport:
    ok: bool
    checks: tuple[RRelationCheck, ...]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            verdict = "ok" if c.ok else "FAILED"
            out.append(f"{verdict:6s} {c.name}  on v_0..v_{c.checked_upto}")
        return out


def check_R_relations(ops: Mapping[str, TruncatedOp], N: int) -> RRelationReport:
    """Evaluate the four defining relations against a given operator family."""
    checks = []
    for name, text in _R_RELATIONS:
        val = evaluate_poly_ops(parse(text, F2), ops, N)
        if val.valid_domain < 0:
            raise ValueError(f"empty valid domain for {name}; increase N")
        checks.append(RRelationCheck(name, val.valid_domain, val.is_zero_on_domain()))
    return RRelationReport(all(c.ok for c in checks), tuple(checks))


def verify_R_relations(N: int = 256) -> RRelationReport:
    """Defining relations plus the auxiliary composition identities.

    Everything is checked on the composed words' valid domains; with
    N = 256 those domains contain v_0..v_31 comfortably.
    """
    if N < 64:
        raise ValueError("need N >= 64")
    ops = build_R_truncated(N)
    report = check_R_relations(ops, N)
    checks = list(report.checks)
    for name, chain, rhs in _R_IDENTITIES:
        lhs = op_identity(N)
        for key in chain:
            lhs = lhs.then(ops[key])
        want = ops[rhs[0]]
        if rhs[-1] == "":
            want = want + op_identity(N)
        upto = min(lhs.valid_domain, want.valid_domain)
        if upto < 0:
            raise ValueError(f"empty valid domain for {name}; increase N")
        checks.append(RRelationCheck(name, upto, lhs.agrees_with(want)))
    return RRelationReport(all(c.ok for c in checks), tuple(checks))


# ---- representation files ----

def serialize_rep(rho: MatRepAssignment) -> str:
    lines = [f"rep n={rho.n}"]
    for g in sorted(rho.images, key=lambda name: word_key((name,))):
        bits = "".join(str((rho.images[g][i] >> j) & 1)
                       for i in range(rho.n) for j in range(rho.n))
        lines.append(f"map {g} = {bits}")
    return "\n".join(lines) + "\n"


def deserialize_rep(text: str) -> MatRepAssignment:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("rep n="):
        raise ValueError("missing 'rep n=<dim>' header")
    try:
        n = int(lines[0][len("rep n="):])
    except ValueError:
        raise ValueError(f"bad dimension in header {lines[0]!r}") from None
    if n < 1:
        raise ValueError("dimension must be positive")
    images: dict[str, Mat] = {}
    for ln in lines[1:]:
        if not ln.startswith("map "):
            raise ValueError(f"expected 'map <gen> = <bits>', got {ln!r}")
        body = ln[len("map "):]
        if "=" not in body:
            raise ValueError(f"expected 'map <gen> = <bits>', got {ln!r}")
        gen, bits = (part.strip() for part in body.split("=", 1))
        if gen in images:
            raise ValueError(f"duplicate image for {gen}")
        if len(bits) != n * n or set(bits) - {"0", "1"}:
            raise ValueError(f"image of {gen} must be {n * n} bits")
        images[gen] = tuple(
            sum(int(bits[i * n + j]) << j for j in range(n)) for i in range(n))
    return MatRepAssignment(n, images)
