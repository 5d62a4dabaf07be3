#!/usr/bin/env python3
"""Regenerate configs/*.json from the model parameters below.

The dynamics are reconstructed from the cited external model references
(pharmacokinetic anesthesia model, adaptive cruise control, planar orbit) and
are marked as such inside each file. Matrices are continuous-time; the loader
discretises them according to the "time" block.
"""
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "configs"


def interval(lo, hi):
    return (lo + hi) / 2.0, (hi - lo) / 2.0


def anesthesia():
    k12, k13, k21, k31, kd = 0.114, 0.0419, 0.055, 0.0033, 0.56
    w_lo, w_hi = 60.0, 60.8

    def k10(w):
        return 0.1527 * w ** -0.3

    # Weight interval mapped to entrywise intervals of the two affected coefficients.
    diag_c, diag_r = interval(-(k10(w_lo) + k12 + k13), -(k10(w_hi) + k12 + k13))
    inv_c, inv_r = interval(1.0 / (0.458 * w_hi), 1.0 / (0.458 * w_lo))
    center = [
        [diag_c, k12, k13, 0.0, inv_c],
        [k21, -k21, 0.0, 0.0, 0.0],
        [k31, 0.0, -k31, 0.0, 0.0],
        [kd, 0.0, 0.0, -kd, 0.0],
    ]
    radius = [[0.0] * 5 for _ in range(4)]
    radius[0][0] = diag_r
    radius[0][4] = inv_r
    return {
        "name": "anesthesia",
        "notes": "external-reference-derived: propofol PK/PD compartment model in "
                 "concentration form with k10 = 0.1527 w^-0.3 and V1 = 0.458 w. "
                 "The patient weight w lies in [60, 60.8] kg at every step. The weight "
                 "interval is folded into entrywise radii of k10 and 1/V1 (monotone in w), "
                 "an over-approximation of the nonlinear dependence. Infusion rate u is a constant uncertain input. "
                 "Time unit: minutes.",
        "states": [
            {"name": "c_p", "initial": [3.0, 4.0]},
            {"name": "c_1", "initial": [3.0, 4.0]},
            {"name": "c_2", "initial": [4.0, 5.0]},
            {"name": "c_e", "initial": [3.0, 4.0]},
        ],
        "inputs": [{"name": "u", "initial": [2.0, 5.0]}],
        "time": {"discretization": "euler", "step": 1.0 / 6.0},
        "dynamics": {"center": center, "radius": radius},
        "unsafe": {"complement_of": {"lower": [1.0, 1.0, 1.0, 1.0],
                                     "upper": [6.0, 10.0, 10.0, 8.0]}},
        "horizon": 2000,
        "seed": 11,
        "trace_mode": "per-step",
        "logging": {"p_log": 0.4, "t_delta": 0, "sensor_radius": [0.1, 0.1, 0.1, 0.1, 0.05],
                    "sensor_relative": 0.0,
                    "probabilities": {"sporadic": 0.2, "frequent": 0.4}},
    }


def acc():
    # Lead vehicle speed relaxes towards the cruise speed v0 and is pushed by
    # its acceleration a_L; the follower uses gap and speed-difference feedback
    # around the lumped net force F. Both uncertain terms are constants, so
    # they enter through the column of an augmented constant state.
    a_l = interval(-0.9, 0.6)
    force = interval(-0.6, 2.46)
    k_h, k_v, relax, v0, gap = 0.5, 1.2, 0.1, 15.0, 6.0
    center = [
        [-k_v, k_h, k_v, -k_h * gap + force[0]],
        [-1.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, -relax, relax * v0 + a_l[0]],
    ]
    radius = [
        [0.0, 0.0, 0.0, force[1]],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, a_l[1]],
    ]
    return {
        "name": "acc",
        "notes": "external-reference-derived closed-loop approximation of adaptive cruise "
                 "control: dv = k_v (v_L - v) + k_h (h - h_ref) + F, dh = v_L - v, "
                 "dv_L = relax (v0 - v_L) + a_L, with a_L in [-0.9, 0.6] and F in "
                 "[-0.6, 2.46] carried by the constant state 'one'. Time unit: seconds.",
        "states": [
            {"name": "v", "initial": [15.0, 15.01]},
            {"name": "h", "initial": [3.0, 3.03]},
            {"name": "v_L", "initial": [14.9, 15.0]},
        ],
        "inputs": [{"name": "one", "initial": [1.0, 1.0]}],
        "time": {"discretization": "euler", "step": 0.1},
        "dynamics": {"center": center, "radius": radius},
        "unsafe": {"regions": [{"lower": [None, None, None], "upper": [None, 0.5, None]}]},
        "horizon": 2000,
        "seed": 23,
        "trace_mode": "per-step",
        "logging": {"p_log": 0.4, "t_delta": 0, "sensor_radius": [0.05, 0.05, 0.05],
                    "sensor_relative": 0.0,
                    "probabilities": {"sporadic": 0.2, "frequent": 0.4}},
    }


def aircraft():
    omega = interval(1.5 * 0.99, 1.5 * 1.01)
    center = [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, -omega[0]],
        [0.0, 0.0, omega[0], 0.0],
    ]
    radius = [[0.0] * 4 for _ in range(4)]
    radius[2][3] = omega[1]
    radius[3][2] = omega[1]
    return {
        "name": "aircraft",
        "notes": "external-reference-derived planar orbit: dx = d, dd = omega J d with "
                 "J the rotation generator and omega in 1.5 +/- 1 %. Time unit: seconds.",
        "states": [
            {"name": "x_1", "initial": [1.1, 1.11]},
            {"name": "x_2", "initial": [1.1, 1.11]},
            {"name": "d_1", "initial": [20.0, 20.1]},
            {"name": "d_2", "initial": [20.0, 20.1]},
        ],
        "time": {"discretization": "exp", "step": 0.1},
        "dynamics": {"center": center, "radius": radius},
        "unsafe": {"complement_of": {"lower": [-49.5, None, None, None],
                                     "upper": [11.0, None, None, None]}},
        "horizon": 2000,
        "seed": 5,
        "trace_mode": "per-step",
        "logging": {"p_log": 0.1, "t_delta": 2, "sensor_radius": [1.0, 1.0, 1.0, 1.0],
                    "sensor_relative": 0.0,
                    "probabilities": {"sporadic": 0.05, "frequent": 0.10,
                                      "intermediate": 0.07}},
    }


def main():
    OUT.mkdir(exist_ok=True)
    for make in (anesthesia, acc, aircraft):
        cfg = make()
        path = OUT / f"{cfg['name']}.json"
        path.write_text(json.dumps(cfg, indent=2) + "\n")
        print(path)


if __name__ == "__main__":
    main()
