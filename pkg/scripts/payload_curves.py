"""Maximum payload versus pump pressure for both weight-vector modes.

Writes one CSV per mode and prints the payload at a few reference points.
"""
import argparse
import math
from pathlib import Path

from hydrogrip import Finger, GripperParams, payload_curve
from hydrogrip.cli import write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--pressure-max", type=float, default=4.0, help="MPa")
    ap.add_argument("--steps", type=int, default=81)
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = GripperParams()
    thetas = [math.radians(d) for d in (40, 50, 60, 70)]
    for mode in ("uniform", "fem"):
        finger = Finger.from_params(params, mode)
        table = payload_curve(params, finger, thetas, args.pressure_max * 1e6, args.steps)
        rows = [(math.degrees(th), p / 1e6, m) for th, p, m in table.tolist()]
        write_csv(out / f"payload_{mode}.csv", ["theta_deg", "pressure_mpa", "payload_kg"], rows)
        print(f"[{mode}]")
        for th, p, m in rows:
            if abs(p - 2.0) < 1e-9 or abs(p - 3.5) < 1e-9:
                print(f"  theta {th:4.0f} deg  P {p:.1f} MPa  payload {m:6.2f} kg")


if __name__ == "__main__":
    main()
