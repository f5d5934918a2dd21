"""Graspable (theta, P) region for several object masses, printed as ASCII maps."""
import argparse
import math

import numpy as np

from hydrogrip import Finger, GripperParams, graspable_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--masses", default="0,2,5,20", help="kg, comma separated")
    ap.add_argument("--weights", choices=["uniform", "fem"], default="fem")
    args = ap.parse_args()

    params = GripperParams()
    finger = Finger.from_params(params, args.weights)
    for m in (float(x) for x in args.masses.split(",")):
        grid = graspable_grid(params, finger, m, resolution=(46, 41))
        print(f"\nm = {m:g} kg  ({grid.feasible.mean():.1%} of cells graspable; rows: P from 4 MPa down, "
              f"cols: theta 0..90 deg; '#' graspable, '.' on the free-bending curve)")
        dP = grid.p_axis[1] - grid.p_axis[0]
        for j in range(len(grid.p_axis) - 1, -1, -1):
            line = []
            for i in range(len(grid.theta_axis)):
                if grid.feasible[i, j]:
                    line.append("#")
                elif abs(grid.free_curve[i] - grid.p_axis[j]) < dP / 2:
                    line.append(".")
                else:
                    line.append(" ")
            print(f"{grid.p_axis[j] / 1e6:4.1f} |" + "".join(line))
        print("      " + "".join("|" if i % 10 == 0 else "-" for i in range(46)))


if __name__ == "__main__":
    main()
