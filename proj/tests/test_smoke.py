"""Smoke tests for the Python bindings."""

import math

import adscmc


def test_causal_classification():
    p = [0.0, 0.0, 1.0, 0.0]
    q = [0.0, 0.0, math.cos(0.5), math.sin(0.5)]
    assert adscmc.classify_pair(p, q) == adscmc.CausalClass.TimeRelated
    assert abs(adscmc.lorentzian_distance(p, q) - 0.5) < 1e-12
    r = adscmc.exp_map(p, [0.0, 0.0, 0.0, 1.0], 0.5)
    assert adscmc.classify_pair(q, r) == adscmc.CausalClass.Coincident


def test_oracles():
    assert adscmc.bound_rhs(0.0, 2) == 2.0
    theta = adscmc.extremal_theta(2.0, 2)
    assert abs(adscmc.cylinder_ii_norm(1, theta, 2) - adscmc.bound_rhs(2.0, 2)) < 1e-12
    assert abs(adscmc.equidistant_H(math.pi / 4, adscmc.Side.Past, 2) - 2.0) < 1e-12


def test_boundary_extension():
    f = adscmc.BoundaryData.from_function(lambda phi: 0.3 * math.cos(phi), 64)
    assert adscmc.is_admissible(f)
    assert abs(adscmc.oscillation(f) - 0.6) < 1e-3
    ext = adscmc.ExtremalPair(f)
    x = adscmc.hyperboloid_point(0.7, [1.0, 0.0])
    assert ext.lower(x) <= ext.upper(x)


def test_mesh_and_geometry():
    mesh = adscmc.build_mesh(1.0, 0.2)
    assert mesh.num_vertices() > 50
    assert adscmc.max_edge_length(mesh) <= 1.5 * mesh.h
    u = [0.0] * mesh.num_vertices()
    geom = adscmc.extrinsic_geometry(mesh, u)
    assert max(abs(h) for h in geom.H) < 1e-8
    assert max(abs(k + 1.0) for k in geom.K) < 1e-6


def test_tiny_solve():
    cfg = adscmc.SolverConfig()
    cfg.h = 0.2
    cfg.radii = [1.0]
    f = adscmc.BoundaryData.constant(0.0)
    sol = adscmc.exhaustion_solve(f, 0.0, cfg)
    assert sol.converged
    assert max(abs(v) for v in sol.u) < 1e-10


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok: {name}")
    print("python smoke tests passed")
