"""Right-angled Coxeter systems presented by flag complexes.

The nerve's vertices become involutive generators; commuting pairs are
exactly the edges.  Each generator acts on Z^n as a reflection written
down from the cosine matrix, giving a faithful integer representation
whose mod-m reductions furnish the finite quotients used downstream.
"""

import numpy as np

from .complex_core import INF, bits_of
from .errors import DomainError, ResourceError
from .exact_linalg import IntMatrix

DEFAULT_BALL_BUDGET = 2_000_000

# int64 matrix products stay exact below this; above it the ball walker
# moves to unbounded python integers
_SAFE_PRODUCT = 1 << 62


class RacgRepresentation:
    __slots__ = ("nerve", "coxeter_matrix", "cosine", "generators", "n")

    def __init__(self, nerve, coxeter_matrix, cosine, generators):
        self.nerve = nerve
        self.coxeter_matrix = coxeter_matrix
        self.cosine = cosine
        self.generators = generators
        self.n = nerve.n

    def dim(self):
        return self.nerve.dim

    def __repr__(self):
        return f"RacgRepresentation(n={self.n})"


class GroupElement:
    __slots__ = ("matrix", "word")

    def __init__(self, matrix, word):
        self.matrix = matrix
        self.word = tuple(word)

    def a(self):
        """Largest absolute entry."""
        return self.matrix.max_abs()

    def __repr__(self):
        return f"GroupElement(word={self.word}, a={self.a()})"


def build_system(nerve):
    """Canonical reflection representation of the right-angled system
    whose commuting pairs are the nerve's edges."""
    if not nerve.is_flag():
        raise DomainError(
            "the right-angled correspondence needs a flag complex")
    n = nerve.n
    adj = nerve.adjacency()
    cox = tuple(tuple(
        1 if i == j else (2 if adj[i] >> j & 1 else INF)
        for j in range(n)) for i in range(n))
    cosine = tuple(tuple(
        1 if i == j else (0 if adj[i] >> j & 1 else -1)
        for j in range(n)) for i in range(n))
    gens = []
    for i in range(n):
        rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for j in range(n):
            # rho(s_i) = I - 2 e_i . row_i(cosine)
            rows[i][j] = (1 if i == j else 0) - 2 * cosine[i][j]
        gens.append(IntMatrix(rows))
    return RacgRepresentation(nerve, cox, cosine, tuple(gens))


def spherical_elements(rep):
    """One group element per nonempty face: the product of its pairwise
    commuting generators (order immaterial)."""
    out = []
    faces = [f for f in rep.nerve.faces() if f]
    for f in sorted(faces, key=lambda m: (bin(m).count("1"),
                                          tuple(bits_of(m)))):
        mat = IntMatrix.identity(rep.n)
        for i in bits_of(f):
            mat = mat @ rep.generators[i]
        out.append((tuple(bits_of(f)), mat))
    return out


def evaluate_word(rep, word, mod=None):
    """Left-to-right product of generators; reduced mod m along the way
    when a modulus is given."""
    mat = IntMatrix.identity(rep.n)
    for i in word:
        if not 0 <= i < rep.n:
            raise DomainError(f"generator index {i} out of range")
        mat = mat @ rep.generators[i]
        if mod is not None:
            mat = mat.mod(mod)
    return mat


class BallReport:
    """Exact Cayley ball: distinct group elements by geodesic length."""

    __slots__ = ("generating_set", "max_length", "level_counts",
                 "level_max_entry", "complete", "elements", "words",
                 "element_levels", "index")

    def __init__(self, generating_set, max_length, level_counts,
                 level_max_entry, complete, elements, words, element_levels,
                 index):
        self.generating_set = generating_set
        self.max_length = max_length
        self.level_counts = level_counts
        self.level_max_entry = level_max_entry
        self.complete = complete
        self.elements = elements
        self.words = words
        self.element_levels = element_levels
        self.index = index

    def element(self, i):
        return GroupElement(IntMatrix(self.elements[i]), self.words[i])

    def total(self):
        return len(self.elements)

    def to_dict(self):
        return {
            "generating_set": self.generating_set,
            "max_length": self.max_length,
            "complete": self.complete,
            "levels": [
                {"length": l, "count": c, "max_entry": m}
                for l, (c, m) in enumerate(
                    zip(self.level_counts, self.level_max_entry))
            ],
            "total": self.total(),
        }


def _as_key(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


def word_ball(rep, max_length, generating_set="standard",
              budget=DEFAULT_BALL_BUDGET):
    """Breadth-first enumeration of all distinct elements of geodesic
    length <= max_length under the chosen generating set.

    Standard generators give word length; spherical elements give
    displacement.  Deduplication is on exact entries, so levels are
    genuinely geodesic.  Budget overruns raise with the partial report
    attached (never usable for certification).
    """
    if max_length < 0:
        raise DomainError("ball radius must be >= 0")
    if generating_set == "standard":
        gen_words = [(i,) for i in range(rep.n)]
        gen_mats = [g for g in rep.generators]
    elif generating_set == "spherical":
        sph = spherical_elements(rep)
        gen_words = [verts for verts, _ in sph]
        gen_mats = [mat for _, mat in sph]
    else:
        raise DomainError(f"unknown generating set {generating_set!r}")

    ident = IntMatrix.identity(rep.n)
    index = {ident.data: 0}
    elements = [ident.data]
    words = [()]
    element_levels = [0]
    level_counts = [1]
    level_max_entry = [1]
    frontier = [0]
    max_gen_entry = max(g.max_abs() for g in gen_mats) if gen_mats else 1

    def report(complete):
        return BallReport(generating_set, max_length, level_counts,
                          level_max_entry, complete, elements, words,
                          element_levels, index)

    use_numpy = True
    np_gens = [g.to_numpy() for g in gen_mats]
    for length in range(1, max_length + 1):
        prev_max = max(level_max_entry)
        if rep.n * prev_max * max_gen_entry >= _SAFE_PRODUCT:
            use_numpy = False
        found = []
        if use_numpy:
            stack = np.stack([np.array(elements[i], dtype=np.int64)
                              for i in frontier])
            for gi, G in enumerate(np_gens):
                prods = stack @ G
                for r in range(prods.shape[0]):
                    key = _as_key(prods[r].tolist())
                    if key in index:
                        continue
                    idx = len(elements)
                    index[key] = idx
                    elements.append(key)
                    words.append(words[frontier[r]] + gen_words[gi])
                    element_levels.append(length)
                    found.append(idx)
                    if len(elements) > budget:
                        level_counts.append(len(found))
                        level_max_entry.append(
                            max(max(abs(x) for row in elements[i]
                                    for x in row) for i in found))
                        raise ResourceError(
                            f"ball budget {budget} exceeded at length "
                            f"{length}", partial=report(False))
        else:
            for fi in frontier:
                base = IntMatrix(elements[fi])
                for gi, G in enumerate(gen_mats):
                    key = (base @ G).data
                    if key in index:
                        continue
                    idx = len(elements)
                    index[key] = idx
                    elements.append(key)
                    words.append(words[fi] + gen_words[gi])
                    element_levels.append(length)
                    found.append(idx)
                    if len(elements) > budget:
                        level_counts.append(len(found))
                        level_max_entry.append(
                            max(max(abs(x) for row in elements[i]
                                    for x in row) for i in found))
                        raise ResourceError(
                            f"ball budget {budget} exceeded at length "
                            f"{length}", partial=report(False))
        if not found:
            break
        level_counts.append(len(found))
        level_max_entry.append(
            max(max(abs(x) for row in elements[i] for x in row)
                for i in found))
        frontier = found
    return report(True)


class DisplacementSearch:
    __slots__ = ("status", "m", "k", "ball_length", "witness",
                 "elements_seen", "detail")

    def __init__(self, status, m, k, ball_length, witness, elements_seen,
                 detail):
        self.status = status
        self.m = m
        self.k = k
        self.ball_length = ball_length
        self.witness = witness
        self.elements_seen = elements_seen
        self.detail = detail

    def to_dict(self):
        return {
            "status": self.status,
            "m": self.m,
            "k": self.k,
            "ball_length": self.ball_length,
            "witness": list(self.witness.word) if self.witness else None,
            "elements_seen": self.elements_seen,
            "detail": self.detail,
        }


def kernel_displacement_search(rep, m, k, budget=DEFAULT_BALL_BUDGET):
    """Look for a nontrivial element of the mod-m kernel at small
    displacement.  The standard-generator ball of radius (d+1)*k covers
    every product of at most k-1 spherical factors (each spherical
    element is a word of length <= d+1), so an empty intersection with
    the kernel certifies displacement >= k for the reduction mod m.
    """
    if m <= 2:
        raise DomainError("kernel search needs m > 2")
    if k < 4:
        raise DomainError("target largeness k must be >= 4")
    d = rep.nerve.dim
    if d is None:
        raise DomainError("nerve must be nonvoid")
    length = (d + 1) * k
    try:
        ball = word_ball(rep, length, "standard", budget)
    except ResourceError as e:
        partial = e.partial
        seen = partial.total() if partial else 0
        return DisplacementSearch(
            "UNDECIDED", m, k, length, None, seen,
            f"budget {budget} exhausted before radius {length}")
    for i in range(1, ball.total()):
        mat = IntMatrix(ball.elements[i])
        if mat.mod(m).is_identity():
            return DisplacementSearch(
                "COUNTEREXAMPLE", m, k, length, ball.element(i),
                ball.total(),
                f"word of length {ball.element_levels[i]} in the kernel")
    return DisplacementSearch(
        "CERTIFIED", m, k, length, None, ball.total(),
        f"no nontrivial kernel element within radius {length}")


def sufficient_modulus(d, k):
    """Modulus (2d+3)^(k-1) guaranteed to exceed every entry reachable
    in k-1 spherical factors, hence certifiable for target k."""
    if d < 0:
        raise DomainError("nerve dimension must be >= 0")
    if k < 4:
        raise DomainError("target largeness k must be >= 4")
    return (2 * d + 3) ** (k - 1)
