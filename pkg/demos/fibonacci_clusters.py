"""Finite local complexity: integers versus Fibonacci versus shifted rows.

Counts translation classes of radius-R clusters on growing windows.  The
integers and the Fibonacci point set settle on a fixed number of classes;
the shifted-rows set keeps producing new ones as the window grows.
"""

from fractions import Fraction

from patternspace import fibonacci_point_set, flc_check, integers, symbolic_complexity
from patternspace.generators import ShiftedRowsGenerator, fibonacci_word


def show(name, rep):
    print(f"{name:>14}: R={rep.radius} windows={[str(w) for w in rep.windows]} classes={rep.class_counts}"
          f" stabilized={rep.stabilized} ({rep.mode})")


def main():
    show("integers", flc_check(integers().pattern(), 1, [4, 8, 16]))
    show("fibonacci", flc_check(fibonacci_point_set().pattern(), Fraction(3, 2), [8, 16, 32]))
    show("shifted rows", flc_check(ShiftedRowsGenerator().pattern(), 2, [1, 2, 4, 8], mode="anchored"))
    print("Fibonacci word complexity p(n), n = 1..12:", symbolic_complexity(fibonacci_word().pattern(), 12))


if __name__ == "__main__":
    main()
