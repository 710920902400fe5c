"""Independent oracle for ap_count_k3_x100_lambda.csv (plain Python, exact fractions)."""
import math
from fractions import Fraction

X = 100


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def mangoldt(n):
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return math.log(p) if n == 1 else 0.0
    return 0.0


lam = [0.0] + [mangoldt(n) for n in range(1, X + 1)]
count = math.fsum(
    lam[n] * lam[n + m] * lam[n + 2 * m]
    for m in range(1, X)
    for n in range(1, X + 1)
    if n + 2 * m <= X
)

forms = [(1, 0), (1, 1), (1, 2)]
product = Fraction(1)
for p in filter(is_prime, range(2, 101)):
    total = Fraction(0)
    for a in range(p):
        for b in range(p):
            term = Fraction(1)
            for c0, c1 in forms:
                term *= Fraction(p, p - 1) if (c0 * a + c1 * b) % p else 0
            total += term
    product *= total / p ** 2
lattice = sum(1 for n in range(1, X + 1) for m in range(1, X + 1) if n + 2 * m <= X)
main = lattice * float(product)

print("system,X,weight,count,predicted_main_term")
print(f"[1 0|0][1 1|0][1 2|0],{X},lambda,{count:.16e},{main:.16e}")
