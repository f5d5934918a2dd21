"""Closed-loop bend-angle regulation with a load step; prints a coarse trace."""
import argparse
import math
import time

from hydrogrip import ControllerConfig, Finger, GripperParams, PlantConfig, run_simulation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta-ref", type=float, default=50.0, help="deg")
    ap.add_argument("--mass", type=float, default=2.0, help="kg, applied at --t-step")
    ap.add_argument("--t-step", type=float, default=5.0)
    ap.add_argument("--duration", type=float, default=10.0)
    ap.add_argument("--noise", type=float, default=0.0, help="sensor noise sigma, deg")
    args = ap.parse_args()

    params = GripperParams()
    finger = Finger.from_params(params, "fem")
    ctrl = ControllerConfig(theta_ref=math.radians(args.theta_ref))
    plant = PlantConfig(mass_schedule=((args.t_step, args.mass),), noise_sigma=math.radians(args.noise))
    start = time.perf_counter()
    trace = run_simulation(params, finger, ctrl, plant, args.duration)
    print(f"{len(trace)} steps in {time.perf_counter() - start:.2f} s (first run includes compilation)")
    print("   t [s]  theta_bar [deg]  P [MPa]  P_ref [MPa]  m [kg]")
    for k in range(0, len(trace), 250):
        print(f"{trace.t[k]:8.2f}  {math.degrees(trace.theta_bar[k]):15.3f}  {trace.P[k] / 1e6:7.4f}"
              f"  {trace.P_ref[k] / 1e6:11.4f}  {trace.m[k]:6.2f}")


if __name__ == "__main__":
    main()
