"""Reduced simplicial (co)homology, exactly.

Two routes: field coefficients use boundary ranks only; integer
coefficients go through Smith normal form.  The two are compared in the
test suite through universal coefficients, so they are kept genuinely
independent.

Degrees are reduced: the empty face lives in degree -1, so the complex
{empty face} has homology of rank one there and the void complex has
none anywhere.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .complex_core import FACE_BUDGET, SimplicialComplex, bits_of
from .errors import DomainError, ResourceError
from .exact_linalg import is_prime, rank, smith_normal_form

DEFAULT_SCAN_CAP = 1 << 22


def parse_coeff(text):
    """Coefficient code: 'q', 'z', or 'f<p>' with p prime."""
    if isinstance(text, int):
        if not is_prime(text):
            raise DomainError(f"{text} is not prime")
        return text
    s = str(text).strip().lower()
    if s in ("q", "z"):
        return s
    if s.startswith("f") and s[1:].isdigit():
        p = int(s[1:])
        if not is_prime(p):
            raise DomainError(f"f{p}: {p} is not prime")
        return p
    raise DomainError(f"unknown coefficient code {text!r}")


def coeff_name(coeff):
    return coeff if isinstance(coeff, str) else f"f{coeff}"


def _bits_key(mask):
    return tuple(bits_of(mask))


def _faces_by_dim(face_masks):
    """Group nonempty face masks by dimension, each level sorted
    lexicographically on its vertex tuple."""
    levels = {}
    for m in face_masks:
        levels.setdefault(bin(m).count("1") - 1, []).append(m)
    top = max(levels)
    out = []
    for r in range(top + 1):
        out.append(sorted(levels.get(r, ()), key=_bits_key))
    return out


def boundary_matrix(levels, r):
    """Matrix of the boundary map from r-faces to (r-1)-faces.

    Degree 0 is augmented: the empty face is the single row.  Degree -1
    is the zero map out of the empty face.
    """
    if r == -1:
        return np.zeros((0, 1), dtype=np.int64)
    cols = levels[r] if r < len(levels) else []
    if r == 0:
        return np.ones((1, len(cols)), dtype=np.int64)
    if r - 1 >= len(levels):
        return np.zeros((0, 0), dtype=np.int64)
    row_index = {m: i for i, m in enumerate(levels[r - 1])}
    A = np.zeros((len(row_index), len(cols)), dtype=np.int64)
    for j, f in enumerate(cols):
        for t, v in enumerate(bits_of(f)):
            A[row_index[f ^ (1 << v)], j] = -1 if t & 1 else 1
    return A


def _integral_entries(face_masks):
    """Reduced integral homology of the complex whose nonempty faces are
    given; returns ((degree, rank, torsion), ...) for nonzero degrees."""
    if not face_masks:
        return ((-1, 1, ()),)
    levels = _faces_by_dim(face_masks)
    d = len(levels) - 1
    fvec = [1] + [len(lv) for lv in levels]
    snfs = [smith_normal_form(boundary_matrix(levels, r))
            for r in range(d + 1)]
    bd_rank = [0] + [s.rank for s in snfs] + [0]  # index r+1 holds rank of d_r
    entries = []
    euler_faces = -1
    euler_hom = 0
    for r in range(-1, d + 1):
        rk = fvec[r + 1] - bd_rank[r + 1] - bd_rank[r + 2]
        tors = snfs[r + 1].torsion() if r + 1 <= d else ()
        euler_faces += (fvec[r + 1] if r >= 0 else 0) * (1 if r % 2 == 0 else -1)
        euler_hom += rk * (1 if r % 2 == 0 else -1)
        if rk or tors:
            entries.append((r, rk, tors))
    # reduced Euler characteristic must agree with the alternating rank sum
    assert euler_faces == euler_hom, (euler_faces, euler_hom)
    return tuple(entries)


def _field_entries(face_masks, coeff):
    """Reduced homology dimensions over Q (coeff 'q') or F_p (coeff p),
    computed from boundary ranks without Smith form."""
    if not face_masks:
        return ((-1, 1),)
    levels = _faces_by_dim(face_masks)
    d = len(levels) - 1
    fvec = [1] + [len(lv) for lv in levels]
    ranks = [0] + [rank(boundary_matrix(levels, r), coeff)
                   for r in range(d + 1)] + [0]
    out = []
    for r in range(-1, d + 1):
        dim = fvec[r + 1] - ranks[r + 1] - ranks[r + 2]
        if dim:
            out.append((r, dim))
    return tuple(out)


class HomologyProfile:
    """Reduced homology of one complex, over one coefficient choice."""

    __slots__ = ("coeff", "entries")

    def __init__(self, coeff, entries):
        self.coeff = coeff
        self.entries = tuple(entries)

    def rank_at(self, deg):
        for e in self.entries:
            if e[0] == deg:
                return e[1]
        return 0

    def torsion_at(self, deg):
        if self.coeff != "z":
            return ()
        for d, _, tors in self.entries:
            if d == deg:
                return tors
        return ()

    def dim_over(self, deg, coeff):
        """Dimension of homology at deg over Q or F_p, by universal
        coefficients when this profile is integral."""
        if self.coeff != "z":
            if coeff != self.coeff:
                raise DomainError("field profile queried over a different field")
            return self.rank_at(deg)
        return entry_field_dim(self.entries, deg, coeff)

    def nonzero_degrees(self):
        return tuple(e[0] for e in self.entries)

    def cohomology_nonzero_degrees(self, coeff=None):
        if self.coeff == "z":
            return entry_coh_degrees(
                self.entries, self.coeff if coeff is None else coeff)
        if coeff not in (None, self.coeff):
            raise DomainError("field profile queried over a different ring")
        return self.nonzero_degrees()

    def is_trivial(self):
        return not self.entries

    def torsion_primes(self):
        return entry_torsion_primes(self.entries) if self.coeff == "z" else ()

    def to_dict(self):
        if self.coeff == "z":
            groups = {str(d): {"rank": rk, "torsion": list(tors)}
                      for d, rk, tors in self.entries}
        else:
            groups = {str(d): {"dim": dim} for d, dim in self.entries}
        return {"coeff": coeff_name(self.coeff), "groups": groups}

    def __repr__(self):
        return f"HomologyProfile({coeff_name(self.coeff)}, {self.entries})"


def reduced_homology(cpx, coeff="z", face_budget=FACE_BUDGET):
    """Reduced homology profile of a complex (or iterable of facet masks)."""
    coeff = parse_coeff(coeff)
    if isinstance(cpx, SimplicialComplex):
        if cpx.is_void():
            return HomologyProfile(coeff, ())
        masks = [f for f in cpx.faces(face_budget) if f]
    else:
        masks = _close_masks([m for m in cpx if m], face_budget)
    if coeff == "z":
        return HomologyProfile("z", _integral_entries(masks))
    return HomologyProfile(coeff, _field_entries(masks, coeff))


# -- entry helpers (scan results are plain tuples, not profiles) ---------

def entry_rank(entry, deg):
    for e in entry:
        if e[0] == deg:
            return e[1]
    return 0


def entry_torsion(entry, deg):
    for d, _, tors in entry:
        if d == deg:
            return tors
    return ()


def entry_field_dim(entry, deg, coeff):
    """dim over Q or F_p from integral data via universal coefficients."""
    rk = entry_rank(entry, deg)
    if coeff == "q":
        return rk
    p = coeff
    below = sum(1 for t in entry_torsion(entry, deg) if t % p == 0)
    above = sum(1 for t in entry_torsion(entry, deg - 1) if t % p == 0)
    return rk + below + above


def entry_hom_nonzero(entry, deg, coeff):
    if coeff == "z":
        return entry_rank(entry, deg) > 0 or bool(entry_torsion(entry, deg))
    return entry_field_dim(entry, deg, coeff) > 0


def entry_coh_nonzero(entry, deg, coeff):
    """Cohomology at deg is nonzero; over Z that means free rank at deg
    or torsion one degree down."""
    if coeff == "z":
        return entry_rank(entry, deg) > 0 or bool(entry_torsion(entry, deg - 1))
    return entry_field_dim(entry, deg, coeff) > 0


def entry_coh_degrees(entry, coeff):
    degs = set()
    if coeff == "z":
        for d, rk, tors in entry:
            if rk:
                degs.add(d)
            if tors:
                degs.add(d + 1)
        return tuple(sorted(degs))
    cand = set()
    for d, _, _ in entry:
        cand.add(d)
        cand.add(d + 1)  # p-torsion shows up one degree higher
    return tuple(sorted(d for d in cand if entry_field_dim(entry, d, coeff)))


def entry_max_coh_degree(entry, coeff):
    degs = entry_coh_degrees(entry, coeff)
    return degs[-1] if degs else None


def entry_torsion_primes(entry):
    primes = set()
    for _, _, tors in entry:
        for t in tors:
            primes.update(_prime_factors(t))
    return tuple(sorted(primes))


def _prime_factors(x):
    out = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        out.append(x)
    return out


# -- homology straight from facet masks, with one nerve fallback ---------

def _close_masks(facet_masks, budget):
    est = sum(1 << bin(m).count("1") for m in set(facet_masks))
    if est > budget:
        raise ResourceError(
            f"face closure would touch about {est} subsets, budget {budget}")
    faces = set()
    for f in facet_masks:
        sub = f
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    faces.discard(0)
    return faces


def profile_from_facets(facet_masks, face_budget=FACE_BUDGET, allow_nerve=True):
    """Integral homology entries for the complex generated by the given
    facet masks.  Large top faces trigger one pass through the nerve of
    the facet cover (facet intersections are simplices, so the nerve has
    the same homotopy type)."""
    facet_masks = list(facet_masks)
    if not facet_masks:
        return ()
    nonzero = [m for m in facet_masks if m]
    if not nonzero:
        return ((-1, 1, ()),)
    common = nonzero[0]
    for m in nonzero[1:]:
        common &= m
    if common:
        return ()  # cone
    est = sum(1 << bin(m).count("1") for m in set(nonzero))
    if est <= min(face_budget, 4096):
        return _integral_entries(_close_masks(nonzero, face_budget))
    if allow_nerve:
        # big top faces, few of them: the nerve is usually far smaller
        nerve = facet_nerve(nonzero)
        if sum(1 << bin(t).count("1") for t in set(nerve)) < est:
            return profile_from_facets(nerve, face_budget,
                                       allow_nerve=False)
    if est <= face_budget:
        return _integral_entries(_close_masks(nonzero, face_budget))
    raise ResourceError(
        f"complex too large even after nerve reduction "
        f"(about {est} faces, budget {face_budget})")


def facet_nerve(facet_masks):
    """Facets of the nerve of the cover by top faces: one nerve vertex
    per facet, a nerve face per set of facets meeting in a vertex."""
    uniq = sorted(set(facet_masks))
    membership = {}
    for i, f in enumerate(uniq):
        for v in bits_of(f):
            membership[v] = membership.get(v, 0) | (1 << i)
    t_sets = set(membership.values())
    return [t for t in t_sets
            if not any(t != u and t & ~u == 0 for u in t_sets)]


# -- full scan over induced subcomplexes ---------------------------------

_SCAN_CACHE = {}


def integral_subset_scan(cpx, cap=DEFAULT_SCAN_CAP, threads=1):
    """Integral homology entries of every induced subcomplex, indexed by
    the vertex-subset bitmask.  One Smith pass per subset; results are
    cached on the complex identity."""
    key = (cpx.n, cpx.facets)
    hit = _SCAN_CACHE.get(key)
    if hit is not None:
        return hit
    total = 1 << cpx.n
    if total > cap:
        raise ResourceError(
            f"subset scan needs {total} evaluations, cap is {cap}")
    faces_arr = np.array([f for f in cpx.faces() if f], dtype=np.int64)
    facets = cpx.facets
    out = [None] * total

    def run(lo, hi):
        for A in range(lo, hi):
            cands = [f & A for f in facets]
            nz = [c for c in cands if c]
            if not nz:
                out[A] = ((-1, 1, ()),) if facets else ()
                continue
            common = nz[0]
            for c in nz[1:]:
                common &= c
            if common:
                out[A] = ()
                continue
            sub = faces_arr[(faces_arr & ~np.int64(A)) == 0]
            out[A] = _integral_entries([int(x) for x in sub])

    if threads <= 1 or total < 64:
        run(0, total)
    else:
        step = (total + threads - 1) // threads
        spans = [(i, min(i + step, total)) for i in range(0, total, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda s: run(*s), spans))
    result = tuple(out)
    _SCAN_CACHE[key] = result
    return result


def scan_torsion_primes(scan):
    primes = set()
    for entry in scan:
        primes.update(entry_torsion_primes(entry))
    return tuple(sorted(primes))
