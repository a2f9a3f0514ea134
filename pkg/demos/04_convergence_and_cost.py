"""
Accuracy and cost of the two representations
=============================================

Both transports use classical RK4, so the endpoint error falls like h^4.  The
spinor state has four real components instead of nine.
"""

import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from liefrenet import SO3, ArcGrid, CurvatureProfile, integrate_frenet, integrate_spinor, spinor_from_frame

profile = CurvatureProfile.sinusoidal({"offset": 1.0, "sin": 0.3}, {"cos": 0.5})
frame = np.eye(3)
phi0 = spinor_from_frame(frame)[0]
steps = np.array([0.4, 0.2, 0.1, 0.05, 0.025])

runs = {
    "frenet": lambda g: integrate_frenet(profile, SO3, frame, g),
    "spinor": lambda g: integrate_spinor(profile, SO3, phi0, g),
}
for name, run in runs.items():
    ref = run(ArcGrid(0, 10, steps.min() / 8)).frames[-1]
    errs = [np.max(np.abs(run(ArcGrid(0, 10, h)).frames[-1] - ref)) for h in steps]
    slope = np.polyfit(np.log(steps), np.log(errs), 1)[0]
    t = time.perf_counter()
    run(ArcGrid(0, 10, 1e-3))
    print(f"{name}: slope {slope:.2f}, {time.perf_counter() - t:.3f}s for 10^4 steps")
    plt.loglog(steps, errs, "o-", label=f"{name} (slope {slope:.2f})")

plt.loglog(steps, 1e-3 * steps**4 / steps[0] ** 4, "k--", label="h^4")
plt.xlabel("h")
plt.ylabel("endpoint frame error")
plt.legend()
plt.savefig("convergence.png")
