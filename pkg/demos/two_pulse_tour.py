"""Two-pulse synthesis of single-qubit gates, one example at a time.

Any SU(2) rotation decomposes into exactly two equal-duration pulses
C(theta, phi1) C(theta, phi2) about equatorial axes.  The closed form
goes through the quaternion picture: read off the rotation axis and
angle, then solve for the common pulse area and the two laser phases.
"""

import numpy as np

from atomqc.linalg import haar_unitary, phase_distance
from atomqc.quaternion import quaternion_from_unitary, to_axis_angle, two_pulse_synthesis

H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)


def show(name, u):
    q, phase = quaternion_from_unitary(u)
    aa = to_axis_angle(q)
    tp = two_pulse_synthesis(u)
    err = phase_distance(tp.reconstruct(), u)
    print(f"{name}:")
    print(f"  rotation angle alpha = {aa.alpha:.6f}, axis = "
          f"({aa.axis[0]:+.4f}, {aa.axis[1]:+.4f}, {aa.axis[2]:+.4f})")
    print(f"  pulses: C({tp.theta1:.6f}, {tp.phi1:.6f}) then "
          f"C({tp.theta2:.6f}, {tp.phi2:.6f}), global phase {tp.gamma:+.6f}")
    print(f"  reconstruction error {err:.2e}")
    print()


# X needs two quarter-turn pulses about the same axis.
show("X", X)

# Hadamard tilts the axis out of the equator; the two pulse phases
# split symmetrically around pi/2.
show("Hadamard", H)

# A rotation about the pole is the worst case for the closed form; the
# pulse area pins to pi and only the phases carry information.
show("RZ(1.3)", np.diag(np.exp([-0.65j, 0.65j])))

# And a generic Haar-random gate.
rng = np.random.default_rng(7)
show("Haar sample", haar_unitary(2, rng))
