"""The six-state worked example: input ``a`` cycles outputs x→y→z, ``b`` reverses the cycle."""

from .io import loads

FIG2_TEXT = """\
inputs a b
outputs x y z
initial q0
q0 a q1 y
q0 b q3 x
q1 a q2 z
q1 b q4 y
q2 a q0 x
q2 b q5 z
q3 a q5 z
q3 b q0 x
q4 a q3 x
q4 b q1 y
q5 a q4 y
q5 b q2 z
"""

# minimised projection onto x
FIG2_X_TEXT = """\
inputs a b
outputs 0 1
initial p0
p0 a p1 0
p0 b p0 1
p1 a p2 0
p1 b p2 0
p2 a p0 1
p2 b p1 0
"""


def fig2():
    return loads(FIG2_TEXT)


def fig2_projection_x():
    return loads(FIG2_X_TEXT)
