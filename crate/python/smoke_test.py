"""Smoke test for the fqmap_py extension.

Build and install it first, e.g.
    pip install maturin && maturin develop -m crates/fqmap-py/Cargo.toml
"""

import json

import fqmap_py as fq


def main():
    g = fq.lattice(20)
    m = fq.pattern("m", 20)
    assert fq.cost(g, m)["edgesum"] == 7140
    assert fq.cost(g, fq.pattern("s", 20))["edgesum"] == 7980

    g6 = fq.lattice(6)
    z = fq.cost(g6, fq.pattern("z", 6))
    assert z["apv"] == 4.5 and z["mpv"] == 7

    h = fq.hamiltonian(g6, fq.pattern("m", 6))
    assert h["n_qubits"] == 36 and len(h["terms"]) == 120

    assert fq.optimal_x_aux(6) == 3
    assert fq.aux_total_weight(6) == 222

    cell = fq.cost(fq.cellular(2, 2), fq.cellular_pattern("z", 2, 2))
    assert cell["edgesum"] == 50

    g3 = fq.lattice(3)
    assert fq.brute_force(g3)["cost"] == 24.0
    r = fq.anneal(g3, seed=1, iterations=50_000)
    assert r["cost"] == 24.0 and sorted(r["scheme"]) == list(range(9))

    try:
        fq.pattern("q", 4)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown pattern accepted")

    json.loads(fq.path(4))
    print("fqmap_py smoke test passed")


if __name__ == "__main__":
    main()
