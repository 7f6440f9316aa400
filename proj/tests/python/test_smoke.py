# Copyright 2026 The lgsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import lgsim

H, Q = lgsim.spin_model(1.0)
UP = np.array([1, 0], dtype=complex)
PLUS_Y = np.array([1, 1j]) / math.sqrt(2)


def test_spin_model_matrices():
    assert np.allclose(H, 0.5 * np.array([[0, 1], [1, 0]]))
    assert np.allclose(Q, np.diag([1, -1]))
    qt = lgsim.heisenberg(Q, H, 0.7)
    sy = np.array([[0, -1j], [1j, 0]])
    assert np.allclose(qt, math.cos(0.7) * Q + math.sin(0.7) * sy, atol=1e-13)


def test_frame_identities():
    f = lgsim.frame(Q, H, 0.0, 1.2)
    assert np.allclose(f["C"], math.cos(1.2) * np.eye(2), atol=1e-13)
    assert f["max_residual"] < 1e-12


def test_history_pair_overlap():
    hp = lgsim.history_pair(Q, H, 0.0, 1.0, "plus_x")
    assert abs(hp["overlap"].real) < 1e-13
    assert hp["p_same"] + hp["p_diff"] == pytest.approx(1.0, abs=1e-13)


def test_sequential_and_quasi():
    seq = lgsim.sequential(PLUS_Y, Q, H, 0.0, 1.0)
    assert seq.correlator() == pytest.approx(math.cos(1.0), abs=1e-13)
    qp = lgsim.quasi_probability(PLUS_Y, Q, H, 0.0, math.pi / 4)
    assert qp.is_quasi
    assert qp(1, -1) == pytest.approx((1 - math.sqrt(2)) / 4, abs=1e-13)
    assert lgsim.nsit_deviation(PLUS_Y, Q, H, 0.0, math.pi / 2) == pytest.approx(0.5, abs=1e-13)


def test_ancilla_and_record():
    out = lgsim.ancilla_simple("plus_x", Q, H, 0.0, 1.0)
    assert out.reduced_system_purity == pytest.approx(1.0, abs=1e-12)
    assert out.joint_state.shape == (4,)
    g = lgsim.ancilla_general(UP, Q, H, 0.0, 1.0, 0.8, 0.6)
    assert g.p1 == pytest.approx(0.5 * (1 + 0.28 * math.cos(1.0)), abs=1e-13)
    rec = lgsim.record_protocol(UP, Q, H, 0.0, 1.0)
    assert rec.decoherent
    assert rec.c12 == pytest.approx(math.cos(1.0), abs=1e-13)
    assert lgsim.record_protocol("plus_x", Q, H, 0.0, 1.0).p_same is None


def test_lg_scan():
    taus = np.linspace(0, math.pi, 91)
    scan = lgsim.violation_scan(Q, H, UP, taus, "sequential", threads=2)
    assert scan.lower.violation == pytest.approx(0.5, abs=1e-12)
    assert scan.lower.tau == pytest.approx(2 * math.pi / 3, abs=1e-12)
    assert len(scan.reports) == len(taus)
    assert lgsim.delta0(0.1, -0.1, 0.2, 0.2) == 0.1
    m = lgsim.modified_lg_check(-0.5, -0.5, -0.5, 0.25)
    assert m.lower == pytest.approx(0.0, abs=1e-15)


def test_classical_baseline():
    model = lgsim.HiddenModel("square_wave", omega=1.0)
    tau = 2 * math.pi / 3
    e = lgsim.lg_suite(model, 0.0, tau, 2 * tau, n_runs=50000, seed=3)
    total = e.report.c12 + e.report.c23 + e.report.c13
    assert abs(total + 1) <= 3 * e.standard_stderr.lower
    a = lgsim.simulate_pair(model, 0.0, 1.0, seed=9)
    b = lgsim.simulate_pair(model, 0.0, 1.0, seed=9, threads=2)
    assert a.counts == b.counts


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        lgsim.HiddenModel("telegraph", rate=-1.0)
    with pytest.raises(ValueError):
        lgsim.sequential("sideways", Q, H, 0.0, 1.0)


def test_run_config():
    cfg = {
        "system": {"dimension": 2, "hamiltonian": {"spin_model": {"omega": 1.0}}, "initial_state": "up_z"},
        "times": {"units": "omega_t", "tau_range": {"start": 0.0, "stop": math.pi, "count": 31}},
        "protocol": "quasi",
    }
    csv, summary = lgsim.run_config(json.dumps(cfg))
    assert csv.splitlines()[0].startswith("tau,C12,C23,C13")
    s = json.loads(summary)
    assert s["lower"]["max_violation"] == pytest.approx(0.5, abs=1e-12)
