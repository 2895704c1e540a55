"""
A tiny calculator for joins, sums, and scalings
===============================================

Terms mix three operations: `|` joins alternatives, `+` adds
weightings pointwise, and `3/2.t` rescales.  Every closed term over
one variable denotes an interval with exact rational endpoints, so
the calculator can print the answer as [lo, hi].
"""

from convexmod import QPLUS, eval_term, parse, render_interval, term_equal

EXAMPLES = [
    "x",
    "2.x | 5.x",
    "(1.x | 2.x) + (5.x | 6.x)",
    "1/2.(x | 3.x)",
    "x + (0 | x)",
    "0.bot",
    "x + bot",
]

for text in EXAMPLES:
    A = eval_term(parse(text, QPLUS), QPLUS, ("x",))
    iv = render_interval(A, ("x",))
    shown = "empty" if iv is None else f"[{iv[0]}, {iv[1]}]"
    print(f"{text:28s} -> {shown}")

# sums distribute over joins, so these two must denote the same set
lhs = "x + (y | z)"
rhs = "(x + y) | (x + z)"
print(lhs, "==", rhs, ":",
      term_equal(parse(lhs, QPLUS), parse(rhs, QPLUS), QPLUS,
                 ("x", "y", "z")))

# joining in any mix of two alternatives changes nothing: the mix
# was already inside
t = "(x | 2.y)"
mixed = f"{t} | (1/3.{t} + 2/3.{t})"
print(t, "absorbs its own mixtures:",
      term_equal(parse(t, QPLUS), parse(mixed, QPLUS), QPLUS,
                 ("x", "y")))
