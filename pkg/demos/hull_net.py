"""Epsilon-nets of orbit samples.

The integers have a circle as hull, so a fine sample of their translates
is covered by a fixed number of balls however many samples are taken.
The shifted-rows set has no finite local complexity and its vertical
translates need a net that grows with the sample.
"""

from fractions import Fraction

from patternspace import eps_net, integers, orbit_sample, shift_grid
from patternspace.generators import ShiftedRowsGenerator


def main():
    Z = integers().pattern()
    for count in (16, 64, 128):
        sample = orbit_sample(Z, shift_grid(0, Fraction(1, count), count), 8)
        net = eps_net(sample, Fraction(1, 8))
        print(f"integers, {count:>3} shifts, eps=1/8: net size {len(net)}, covering radius {net.radius}")
    S = ShiftedRowsGenerator().pattern()
    for count in (2, 4, 8):
        sample = orbit_sample(S, shift_grid("0,0", "0,1", count), 6)
        net = eps_net(sample, Fraction(1, 5))
        print(f"shifted rows, {count:>2} vertical shifts, eps=1/5: net size {len(net)}")


if __name__ == "__main__":
    main()
