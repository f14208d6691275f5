#!/usr/bin/env python3
"""Writes a synthetic one-year history for the example energy hub.

Output is the scenario CSV pair read by `hubplan scen gen --history`:
scenarios.csv (scenario,hour,elec_load_kw,heat_load_kw,pv_avail_kw) and
ev.csv (scenario,ev_id,arrive_hour,depart_hour,initial_soc), one scenario
per historical day.
"""

import argparse
import csv
import pathlib

import numpy as np

HOURS = 24


def office_shape():
    h = np.arange(HOURS)
    occupied = 1.0 / (1.0 + np.exp(-(h - 7.5) * 1.5)) * (1.0 / (1.0 + np.exp((h - 19.0) * 1.5)))
    return 0.35 + 0.65 * occupied


def heat_shape():
    h = np.arange(HOURS)
    return 0.55 + 0.3 * np.exp(-((h - 7.0) ** 2) / 8.0) + 0.25 * np.exp(-((h - 19.0) ** 2) / 10.0)


def pv_shape():
    h = np.arange(HOURS) + 0.5
    s = np.sin(np.pi * (h - 6.0) / 13.0)
    s[(h < 6.0) | (h > 19.0)] = 0.0
    return np.clip(s, 0.0, None)


def simulate(days, n_ev, seed):
    rng = np.random.default_rng(seed)
    doy = np.arange(days)
    season = np.cos(2.0 * np.pi * (doy - 15) / 365.0)  # +1 mid-winter, -1 mid-summer

    rows, ev_rows = [], []
    for d in range(days):
        sun = rng.beta(4.0, 1.6)
        weekday = (d % 7) < 5
        level = (520.0 if weekday else 330.0) * (1.0 + 0.12 * abs(season[d])) * rng.lognormal(0.0, 0.06)
        cooling = 60.0 * max(0.0, -season[d]) * sun
        elec = level * office_shape() + cooling * pv_shape() + rng.normal(0.0, 12.0, HOURS)
        heat_level = 90.0 + 60.0 * max(0.0, season[d]) + rng.gamma(4.0, 4.0)
        heat = heat_level * heat_shape() * (1.0 - 0.15 * sun) + rng.normal(0.0, 3.0, HOURS)
        pv_peak = 800.0 * (0.85 - 0.15 * season[d]) * sun
        pv = pv_peak * pv_shape() * rng.uniform(0.9, 1.0, HOURS)
        pv[pv_shape() == 0.0] = 0.0
        for t in range(HOURS):
            rows.append((d, t, max(elec[t], 0.0), max(heat[t], 0.0), max(pv[t], 0.0)))
        for k in range(n_ev):
            arrive = int(np.clip(np.rint(rng.normal(8.3, 1.0)), 6, 11))
            depart = int(np.clip(np.rint(rng.normal(17.8, 1.0)), 15, 21))
            soc = float(np.clip(rng.normal(0.4, 0.1), 0.2, 0.6))
            ev_rows.append((d, k, arrive, depart, soc))
    return rows, ev_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--days", type=int, default=365)
    ap.add_argument("--evs", type=int, default=5)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("data/example/history"))
    args = ap.parse_args()

    rows, ev_rows = simulate(args.days, args.evs, args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "scenarios.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["scenario", "hour", "elec_load_kw", "heat_load_kw", "pv_avail_kw"])
        for d, t, e, h, p in rows:
            w.writerow([d, t, f"{e:.3f}", f"{h:.3f}", f"{p:.3f}"])
    with open(args.out / "ev.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["scenario", "ev_id", "arrive_hour", "depart_hour", "initial_soc"])
        for d, k, a, dep, soc in ev_rows:
            w.writerow([d, k, a, dep, f"{soc:.3f}"])


if __name__ == "__main__":
    main()
