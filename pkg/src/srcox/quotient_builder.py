"""Finite quotients of the thickened Davis complex.

Reduction mod m sends the reflection group onto a finite matrix group;
spherical cosets become cells, cells become simplices, and when the
kernel provably moves every chamber far enough the result inherits the
nerve's local structure.  Certificates carry every check outcome so a
rejected run is never silent.
"""

import hashlib
import json
from itertools import combinations

from .complex_core import SimplicialComplex, bits_of
from .errors import DomainError, PropertyViolation, ResourceError
from .racg import (
    DEFAULT_BALL_BUDGET,
    build_system,
    evaluate_word,
    kernel_displacement_search,
    spherical_elements,
    sufficient_modulus,
)

DEFAULT_GROUP_BUDGET = 1 << 20
SAMPLE_THRESHOLD = 64


class ConstructionRejected(PropertyViolation):
    """Pipeline declined to emit; the certificate says why."""

    def __init__(self, message, certificate):
        super().__init__(message)
        self.certificate = certificate


def _mul_mod(a, b, m):
    n = len(a)
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(n)) % m
              for c in range(n))
        for r in range(n))


class ImageGroup:
    """Image of the integer representation in GL_n(Z/m)."""

    __slots__ = ("rep", "m", "elements", "index", "words", "gen_images")

    def __init__(self, rep, m, elements, index, words, gen_images):
        self.rep = rep
        self.m = m
        self.elements = elements
        self.index = index
        self.words = words
        self.gen_images = gen_images

    @property
    def order(self):
        return len(self.elements)

    def product(self, i, j):
        return self.index[_mul_mod(self.elements[i], self.elements[j], self.m)]

    def inverse(self, i):
        # generators are involutions, so reversing a witness word inverts
        return self.word_image(tuple(reversed(self.words[i])))

    def word_image(self, word):
        idx = 0
        for g in word:
            idx = self.product(idx, self.index[self.gen_images[g]])
        return idx

    def __repr__(self):
        return f"ImageGroup(m={self.m}, order={self.order})"


def image_group(rep, m, budget=DEFAULT_GROUP_BUDGET):
    """Closure of the generator images mod m under multiplication."""
    if m < 2:
        raise DomainError("modulus must be >= 2")
    n = rep.n
    ident = tuple(tuple(1 if r == c else 0 for c in range(n))
                  for r in range(n))
    gen_images = [tuple(tuple(x % m for x in row) for row in g.data)
                  for g in rep.generators]
    index = {ident: 0}
    elements = [ident]
    words = [()]
    frontier = [0]
    while frontier:
        new = []
        for fi in frontier:
            for gi, G in enumerate(gen_images):
                prod = _mul_mod(elements[fi], G, m)
                if prod in index:
                    continue
                if len(elements) >= budget:
                    raise ResourceError(
                        f"image group exceeded budget {budget} elements")
                index[prod] = len(elements)
                elements.append(prod)
                words.append(words[fi] + (gi,))
                new.append(index[prod])
        frontier = new
    return ImageGroup(rep, m, tuple(elements), index, tuple(words),
                      gen_images)


class QuotientComplex:
    """Cells g.image(W_T) of the quotient, one per face T and coset."""

    __slots__ = ("group", "cells", "coset_sizes_ok")

    def __init__(self, group, cells, coset_sizes_ok):
        self.group = group
        self.cells = cells
        self.coset_sizes_ok = coset_sizes_ok

    def cells_of_face(self, t_mask):
        return [es for t, es in self.cells if t == t_mask]

    def __repr__(self):
        return (f"QuotientComplex(order={self.group.order}, "
                f"cells={len(self.cells)})")


def quotient_complex(rep, group):
    if group.rep is not rep:
        raise DomainError("group was built from a different representation")
    subgroup_cache = {}

    def face_subgroup(t_mask):
        got = subgroup_cache.get(t_mask)
        if got is None:
            verts = bits_of(t_mask)
            got = set()
            for r in range(len(verts) + 1):
                for sub in combinations(verts, r):
                    got.add(group.word_image(sub))
            subgroup_cache[t_mask] = got
        return got

    cells = {}
    sizes_ok = True
    for t_mask in rep.nerve.faces():
        sub = face_subgroup(t_mask)
        expect = 1 << bin(t_mask).count("1")
        for g in range(group.order):
            coset = frozenset(group.product(g, h) for h in sub)
            if len(coset) != expect:
                sizes_ok = False
            cells[(t_mask, coset)] = None
    ordered = sorted(cells,
                     key=lambda c: (bin(c[0]).count("1"), c[0], sorted(c[1])))
    return QuotientComplex(group, tuple(ordered), sizes_ok)


def thicken(q):
    """Simplicial complex on the group elements: every cell becomes the
    simplex on its vertex set."""
    # empty-face cells come first, one per group element in index order,
    # so the new vertex ids coincide with group element indices
    facet_lists = [[f"g{i}" for i in sorted(es)] for _, es in q.cells]
    return SimplicialComplex.from_facets(facet_lists)


class ConstructionCertificate:
    __slots__ = ("k", "m", "displacement_status", "torsion_free",
                 "link_check", "largeness_ok", "counterexample",
                 "sampled_vertices", "link_hashes", "group_order",
                 "detail", "emitted")

    def __init__(self, k, m, displacement_status, torsion_free,
                 link_check=None, largeness_ok=None, counterexample=None,
                 sampled_vertices=(), link_hashes=None, group_order=None,
                 detail=None, emitted=False):
        self.k = k
        self.m = m
        self.displacement_status = displacement_status
        self.torsion_free = torsion_free
        self.link_check = link_check
        self.largeness_ok = largeness_ok
        self.counterexample = counterexample
        self.sampled_vertices = tuple(sampled_vertices)
        self.link_hashes = link_hashes or {}
        self.group_order = group_order
        self.detail = detail
        self.emitted = emitted

    def to_dict(self):
        return {
            "k": self.k,
            "m": self.m,
            "displacement_status": self.displacement_status,
            "torsion_free": self.torsion_free,
            "link_check": self.link_check,
            "largeness_ok": self.largeness_ok,
            "counterexample": (list(self.counterexample)
                               if self.counterexample is not None else None),
            "sampled_vertices": list(self.sampled_vertices),
            "link_hashes": dict(self.link_hashes),
            "group_order": self.group_order,
            "detail": self.detail,
            "emitted": self.emitted,
        }


def _spherical_lookup(rep, group):
    """Map image-group indices of spherical elements to nerve faces;
    None when two spherical elements collide mod m."""
    table = {}
    for verts, mat in spherical_elements(rep):
        idx = group.index.get(
            tuple(tuple(x % group.m for x in row) for row in mat.data))
        if idx is None or idx in table or idx == 0:
            return None
        table[idx] = verts
    return table


def _check_vertex_link(out, delta, group, lookup, g):
    """The link of vertex g, pulled back through h -> g^{-1}h, must be
    the face complex of the nerve."""
    g_inv = group.inverse(g)
    link_facets = set()
    for f in out.facets:
        if not f >> g & 1:
            continue
        rest = f & ~(1 << g)
        mapped = []
        for h in bits_of(rest):
            s = lookup.get(group.product(g_inv, h))
            if s is None:
                return False, None
            mapped.append(s)
        # distinct neighbours must land on distinct faces
        if len(set(mapped)) != len(mapped):
            return False, None
        link_facets.add(frozenset(mapped))
    expected = set()
    for tau in delta.facets:
        verts = bits_of(tau)
        expected.add(frozenset(
            sub for r in range(1, len(verts) + 1)
            for sub in combinations(verts, r)))
    canon = sorted(sorted(sorted(face) for face in fs) for fs in link_facets)
    digest = hashlib.sha256(
        json.dumps(canon, separators=(",", ":")).encode()).hexdigest()
    return link_facets == expected, digest


def s_construction(delta, k, m=None, ball_budget=DEFAULT_BALL_BUDGET,
                   group_budget=DEFAULT_GROUP_BUDGET):
    """Large-girth cover pipeline: certify that the mod-m kernel moves
    every chamber at least k steps, then return the thickened quotient
    with its certificate."""
    if k < 4:
        raise DomainError("target largeness k must be >= 4")
    largeness = delta.largeness()
    if not largeness.is_k_large(k):
        raise DomainError(
            f"input complex is not {k}-large "
            f"(flag={largeness.flag}, "
            f"shortest induced cycle={largeness.shortest_induced_cycle})")
    rep = build_system(delta)
    if m is None:
        m = sufficient_modulus(delta.dim, k)
    if m < 2:
        raise DomainError("modulus must be >= 2")

    if m <= 2:
        # generators already die mod 2, so the kernel moves nothing
        word = (0,)
        counter = word if evaluate_word(rep, word, mod=m).is_identity() \
            else None
        cert = ConstructionCertificate(
            k, m, "COUNTEREXAMPLE" if counter else "UNDECIDED",
            torsion_free=False, counterexample=counter,
            detail="torsion-free reduction needs m > 2")
        raise ConstructionRejected(
            f"mod {m} quotient is never torsion-free", cert)

    search = kernel_displacement_search(rep, m, k, ball_budget)
    if search.status == "COUNTEREXAMPLE":
        cert = ConstructionCertificate(
            k, m, search.status, torsion_free=True,
            counterexample=search.witness.word, detail=search.detail)
        raise ConstructionRejected(
            f"kernel element of small displacement mod {m}: "
            f"word {list(search.witness.word)}", cert)
    if search.status == "UNDECIDED":
        cert = ConstructionCertificate(
            k, m, search.status, torsion_free=True, detail=search.detail)
        err = ResourceError(
            f"displacement search undecided: {search.detail}")
        err.certificate = cert
        raise err

    group = image_group(rep, m, group_budget)
    quotient = quotient_complex(rep, group)
    out = thicken(quotient)

    order = group.order
    if order <= SAMPLE_THRESHOLD:
        sampled = list(range(order))
    else:
        sampled = sorted({i * order // 8 for i in range(8)})
    lookup = _spherical_lookup(rep, group)
    link_ok = lookup is not None
    hashes = {}
    if link_ok:
        for g in sampled:
            ok, digest = _check_vertex_link(out, delta, group, lookup, g)
            if digest is not None:
                hashes[str(g)] = digest
            if not ok:
                link_ok = False
                break
    largeness_ok = out.largeness().is_k_large(k)
    cert = ConstructionCertificate(
        k, m, "CERTIFIED", torsion_free=True, link_check=link_ok,
        largeness_ok=largeness_ok, sampled_vertices=sampled,
        link_hashes=hashes, group_order=order,
        detail=search.detail, emitted=True)
    if not quotient.coset_sizes_ok:
        cert.detail = (cert.detail or "") + "; coset size anomaly recorded"
    return out, cert
