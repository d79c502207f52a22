"""Smoke test for the xyswap extension module.

Build and install first:
    pip install maturin
    maturin develop -m crates/python/Cargo.toml
"""

import math

import xyswap


def main():
    p = xyswap.ChainParams(1.0, 0.0, 0.0, 0.5)
    assert p.regime() == "below"

    rho = xyswap.chain_state(p)
    assert abs(sum(rho[i][i].real for i in range(4)) - 1.0) < 1e-12

    m = xyswap.pair_metrics(p)
    assert 0.0 < m.concurrence <= 1.0 and m.fef > 0.5

    probs = xyswap.swap_probabilities(p)
    assert len(probs) == 8 and abs(sum(probs) - 1.0) < 1e-10

    f = xyswap.fidelity(xyswap.ChainParams(1.0, 0.3, 0.4, 0.5))
    assert abs(f.phi_closed - f.phi_simulated) < 1e-9

    r = xyswap.critical_temperature(3, 0.0, 0.5)
    assert r.converged and abs(r.t_over_j - 0.43810) < 1e-4

    rows = xyswap.sweep(2, 0.0, [0.0, 0.4, 0.9])
    assert [round(x.t_over_j, 5) for x in rows] == [1.13459, 1.07525, 0.71411]

    assert xyswap.t3_asymptote(1.0, 50.0) < xyswap.t2_asymptote(1.0, 50.0)

    try:
        xyswap.fidelity(p, mu=math.pi)
    except ValueError as e:
        assert "--mu" in str(e)
    else:
        raise AssertionError("mu outside [0, pi/4] accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
