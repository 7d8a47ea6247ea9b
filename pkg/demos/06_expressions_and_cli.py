"""
Expressions and the command line
================================

Nets and sets on the command line are written in a small expression language.
"""
from netdensity import eval_expr, parse_expr, pretty
from netdensity.cli import main

e = parse_expr("if x1==x2 && x2==x3 then 1 else 1/(x1+x2+x3)", 3)
print(pretty(e))
print(eval_expr(e, (2, 2, 2)), eval_expr(e, (1, 2, 3)))

# Integers stay exact, so divisibility tests are safe for huge values.
print(eval_expr(parse_expr("divides(7, pow(7, 30) + 7)", 1), (1,)))

# Same entry point as the `netdensity` console script.
main(["density", "--family", "div1", "--set", "divides(3, n)", "--horizon", "10000"])
main(["converge", "--net", "1/n", "--net", "pow(-1, n)/n", "--limit", "0,0", "--eps", "0.5,0.1"])
