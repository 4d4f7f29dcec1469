#!/usr/bin/env python3
"""Regenerate the bundled convex meshes in data/meshes.

Every mesh is the convex hull of a deterministic point set, written as OBJ
with outward-oriented triangles. Run from anywhere:

    python3 tools/make_meshes.py [output_dir]
"""

import sys
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull


def fibonacci_sphere(n):
    i = np.arange(n) + 0.5
    phi = np.arccos(1.0 - 2.0 * i / n)
    theta = np.pi * (1.0 + 5.0**0.5) * i
    return np.column_stack(
        [np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)]
    )


def cube():
    return np.array([[x, y, z] for x in (-0.5, 0.5) for y in (-0.5, 0.5) for z in (-0.5, 0.5)])


def icosahedron():
    g = (1.0 + 5.0**0.5) / 2.0
    pts = []
    for a in (-1.0, 1.0):
        for b in (-g, g):
            pts += [[0, a, b], [a, b, 0], [b, 0, a]]
    return 0.5 * np.array(pts) / np.linalg.norm(pts[0])


def dodecahedron():
    g = (1.0 + 5.0**0.5) / 2.0
    pts = [[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    for a in (-1.0, 1.0):
        for b in (-1.0, 1.0):
            pts += [[0, a / g, b * g], [a / g, b * g, 0], [b * g, 0, a / g]]
    return 0.5 * np.array(pts) / 3.0**0.5


def cylinder(n=32, radius=0.3, height=0.8):
    t = 2.0 * np.pi * np.arange(n) / n
    ring = np.column_stack([radius * np.cos(t), radius * np.sin(t)])
    top = np.column_stack([ring, np.full(n, height / 2)])
    bottom = np.column_stack([ring, np.full(n, -height / 2)])
    return np.vstack([top, bottom])


def capsule(n=200, radius=0.25, half_length=0.3):
    p = radius * fibonacci_sphere(n)
    p[:, 2] += np.where(p[:, 2] >= 0.0, half_length, -half_length)
    return p


def rock(rng, n, scale):
    p = fibonacci_sphere(n)
    p *= (1.0 + 0.06 * rng.standard_normal((n, 1))).clip(0.6, 1.5)
    return p * np.asarray(scale)


def superellipsoid(n=2500, radii=(0.6, 0.4, 0.3), e=0.5):
    d = fibonacci_sphere(n)
    # Radial scaling onto |x/a|^(2/e) + |y/b|^(2/e) + |z/c|^(2/e) = 1.
    r = np.sum(np.abs(d / np.asarray(radii)) ** (2.0 / e), axis=1) ** (-e / 2.0)
    return d * r[:, None]


def write_obj(path, points):
    hull = ConvexHull(points)
    used = np.unique(hull.simplices)
    remap = {int(v): i for i, v in enumerate(used)}
    centroid = points[used].mean(axis=0)
    with open(path, "w") as out:
        out.write(f"# {path.stem}: {len(used)} hull vertices\n")
        for v in used:
            x, y, z = points[v]
            out.write(f"v {x:.9f} {y:.9f} {z:.9f}\n")
        for tri in hull.simplices:
            a, b, c = (points[i] for i in tri)
            if np.dot(np.cross(b - a, c - a), a - centroid) < 0.0:
                tri = tri[[0, 2, 1]]
            out.write("f " + " ".join(str(remap[int(i)] + 1) for i in tri) + "\n")
    return len(used)


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "meshes"
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20220622)
    meshes = {
        "cube": cube(),
        "icosahedron": icosahedron(),
        "dodecahedron": dodecahedron(),
        "cylinder": cylinder(),
        "capsule": capsule(),
        "rock_small": rock(rng, 120, (0.5, 0.35, 0.3)),
        "rock_large": rock(rng, 800, (0.45, 0.5, 0.3)),
        "sphere_1000": 0.4 * fibonacci_sphere(1000),
        "superellipsoid": superellipsoid(),
        "ellipsoid_5000": fibonacci_sphere(5000) * np.array([0.7, 0.4, 0.25]),
    }
    for name, pts in meshes.items():
        n = write_obj(out_dir / f"{name}.obj", np.asarray(pts, dtype=float))
        print(f"{name}: {n} vertices")


if __name__ == "__main__":
    main()
