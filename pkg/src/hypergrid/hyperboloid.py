"""Numerics for hyperbolic geometry on the Minkowski hyperboloid.

Points of H^n (n = 2 or 3) live on the upper sheet of <p, p> = -1 under the
bilinear form with signature (+, ..., +, -); the timelike coordinate comes
last.  Isometries are (n+1)x(n+1) matrices M with M^T J M = J that preserve
the sheet.  Planes (geodesic lines in H^2) are encoded by unit spacelike
normals n, the plane being {p : <p, n> = 0}.

Everything here is a pure function over plain numpy arrays, so values can be
shared freely between threads.
"""

from __future__ import annotations

import math

import numpy as np

Vec = np.ndarray
Mat = np.ndarray

# Construction tolerance for points/directions/normals.
POINT_TOL = 1e-9
# Allowed drift of M^T J M from J for a usable isometry.
FORM_TOL = 1e-8
# How many matrix compositions are safe before renormalizing.
RENORM_EVERY = 64


class GeometryError(ValueError):
    """Raised when an input violates the model's invariants."""


def form_signs(n_ambient: int) -> Vec:
    """Diagonal of the bilinear form for vectors of length ``n_ambient``."""
    signs = np.ones(n_ambient)
    signs[-1] = -1.0
    return signs


def minkowski_inner(a: Vec, b: Vec) -> float:
    """<a, b> = sum_i<n a_i b_i - a_n b_n.  Arrays must have equal length."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise GeometryError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.dot(a[:-1], b[:-1]) - a[-1] * b[-1])


def inner_rows(pts: np.ndarray, v: Vec) -> np.ndarray:
    """Minkowski inner product of each row of ``pts`` with ``v``."""
    signs = form_signs(pts.shape[-1])
    return pts @ (signs * v)


def origin(n: int) -> Vec:
    """The point fixed by all spatial rotations (0, ..., 0, 1) in H^n."""
    p = np.zeros(n + 1)
    p[-1] = 1.0
    return p


def point_from_spatial(spatial) -> Vec:
    """Lift spatial coordinates onto the hyperboloid sheet."""
    spatial = np.asarray(spatial, dtype=float)
    return np.append(spatial, math.sqrt(1.0 + float(spatial @ spatial)))


def normalize_point(p: Vec) -> Vec:
    """Rescale p onto <p, p> = -1 with positive timelike coordinate."""
    q = -minkowski_inner(p, p)
    if q <= 0.0:
        raise GeometryError("vector is not timelike; cannot normalize to a point")
    p = np.asarray(p, dtype=float) / math.sqrt(q)
    if p[-1] < 0:
        raise GeometryError("point lies on the lower sheet")
    return p


def assert_point(p: Vec, tol: float = POINT_TOL) -> None:
    if abs(minkowski_inner(p, p) + 1.0) > tol or p[-1] < 1.0 - tol:
        raise GeometryError(f"not a hyperboloid point: {p!r}")


def assert_direction(v: Vec, base: Vec, tol: float = 1e-6) -> None:
    if abs(minkowski_inner(v, v) - 1.0) > tol:
        raise GeometryError("direction is not unit spacelike")
    if abs(minkowski_inner(v, base)) > tol:
        raise GeometryError("direction is not tangent at its base point")


def assert_isometry(m: Mat, tol: float = FORM_TOL) -> None:
    if form_drift(m) > tol:
        raise GeometryError("matrix does not preserve the bilinear form")
    if m[-1, -1] <= 0:
        raise GeometryError("matrix swaps the hyperboloid sheets")


def form_drift(m: Mat) -> float:
    """Max-abs deviation of M^T J M from J."""
    signs = form_signs(m.shape[0])
    gram = m.T @ (signs[:, None] * m)
    return float(np.max(np.abs(gram - np.diag(signs))))


def distance(a: Vec, b: Vec) -> float:
    """Hyperbolic distance; clamping guards rounding for near-equal points."""
    return math.acosh(max(1.0, -minkowski_inner(a, b)))


def tangent_toward(p: Vec, q: Vec) -> Vec:
    """Unit direction at p pointing toward q (p != q)."""
    w = q + minkowski_inner(q, p) * p
    norm = minkowski_inner(w, w)
    if norm <= 0:
        raise GeometryError("undefined direction between coincident points")
    return w / math.sqrt(norm)


def project_direction(p: Vec, raw: Vec) -> Vec:
    """Project an ambient vector into the unit tangent sphere at p."""
    w = np.asarray(raw, dtype=float) + minkowski_inner(raw, p) * p
    norm = minkowski_inner(w, w)
    if norm <= 0:
        raise GeometryError("vector has no spacelike component at this point")
    return w / math.sqrt(norm)


def geodesic_at(p: Vec, v: Vec, t: float) -> Vec:
    """Point at arclength t along the geodesic leaving p with direction v."""
    assert_direction(v, p)
    return p * math.cosh(t) + v * math.sinh(t)


def geodesic_between(a: Vec, b: Vec, fractions) -> np.ndarray:
    """Sample the geodesic segment a->b at the given fractions in [0, 1]."""
    fractions = np.asarray(fractions, dtype=float)
    tau = distance(a, b)
    if tau < 1e-12:
        return np.tile(a, (len(fractions), 1))
    s = np.sinh(tau)
    return (np.outer(np.sinh((1.0 - fractions) * tau), a)
            + np.outer(np.sinh(fractions * tau), b)) / s


def translation_to(p: Vec) -> Mat:
    """Isometry carrying the origin to p along their common geodesic.

    Pure translation: it acts only in the plane spanned by the origin and p
    and fixes the orthogonal complement pointwise.
    """
    p = np.asarray(p, dtype=float)
    n = len(p) - 1
    o = origin(n)
    t = distance(o, p)
    if t < 1e-12:
        return np.eye(n + 1)
    u = tangent_toward(o, p)
    signs = form_signs(n + 1)
    us = signs * u
    os_ = signs * o
    m = np.eye(n + 1)
    m += (math.cosh(t) - 1.0) * (np.outer(u, us) - np.outer(o, os_))
    m += math.sinh(t) * (np.outer(o, us) - np.outer(u, os_))
    return m


def reflect_in_plane(normal: Vec) -> Mat:
    """Reflection x -> x - 2<x, n>n in the plane {<x, n> = 0}."""
    normal = np.asarray(normal, dtype=float)
    if abs(minkowski_inner(normal, normal) - 1.0) > 1e-8:
        raise GeometryError("plane normal must be unit spacelike")
    signs = form_signs(len(normal))
    return np.eye(len(normal)) - 2.0 * np.outer(normal, signs * normal)


def embed_rotation(spatial: Mat) -> Mat:
    """Extend a spatial orthogonal matrix to an isometry fixing the origin."""
    n = spatial.shape[0]
    m = np.eye(n + 1)
    m[:n, :n] = spatial
    return m


def ray_plane_hit(p: Vec, v: Vec, normal: Vec) -> float | None:
    """First t >= 0 where the ray (p, v) meets the plane of ``normal``.

    Solves <p cosh t + v sinh t, n> = 0, i.e. tanh t = -<p,n>/<v,n>.  Returns
    None when the ray never reaches the plane.  A ray lying inside the plane
    reports t = 0, so callers can treat it as "already on the face".
    """
    a = minkowski_inner(p, normal)
    b = minkowski_inner(v, normal)
    if abs(a) < 1e-14 and abs(b) < 1e-14:
        return 0.0
    if abs(b) <= abs(a):
        return None
    r = -a / b
    if r < 0.0:
        return None
    return math.atanh(r)


def to_disk(p: Vec, w: float = 1.0) -> Vec:
    """Stereographic projection (x, .., z) -> (x/(w+z), ..) into the unit ball."""
    p = np.asarray(p, dtype=float)
    return p[:-1] / (w + p[-1])


def disk_batch(pts: np.ndarray, w) -> np.ndarray:
    """Project rows of hyperboloid points; ``w`` may be scalar or per-row."""
    return pts[:, :-1] / (np.asarray(w) + pts[:, -1:].T).T


def compose(*ms: Mat) -> Mat:
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def apply(m: Mat, vec: Vec) -> Vec:
    return m @ vec


def inverse(m: Mat) -> Mat:
    """Form-preserving inverse J M^T J (no linear solve needed)."""
    signs = form_signs(m.shape[0])
    return signs[:, None] * m.T * signs[None, :]


def reorthonormalize(m: Mat) -> Mat:
    """Minkowski Gram-Schmidt on rows; fixed point for orthonormal input.

    The timelike row is corrected first, then each spatial row is projected
    against the rows already fixed and renormalized.
    """
    m = np.array(m, dtype=float)
    n = m.shape[0] - 1
    signs = form_signs(n + 1)
    last = m[n]
    q = -float(np.dot(last * signs, last))
    if q <= 0:
        raise GeometryError("degenerate matrix: timelike row lost")
    m[n] = last / math.sqrt(q)
    for i in range(n):
        v = m[i]
        v = v + float(np.dot(v * signs, m[n])) * m[n]
        for j in range(i):
            v = v - float(np.dot(v * signs, m[j])) * m[j]
        q = float(np.dot(v * signs, v))
        if q <= 0:
            raise GeometryError("degenerate matrix: rank loss in row %d" % i)
        m[i] = v / math.sqrt(q)
    if m[n, n] <= 0:
        raise GeometryError("matrix swaps the hyperboloid sheets")
    return m
