"""
The two-qubit magic square, exactly
===================================

Nine Pauli observables on two spin-1/2 particles, arranged so that every row
and every column is a set of commuting operators.  All arithmetic is done
with exact Gaussian rationals.
"""
from functools import reduce

from ksverify import mermin_square
from ksverify.exact import identity, integer_spectrum, mul

square = mermin_square()
for row in square.cells:
    print("   ".join(f"{o.string.letters} ({o.label})" for o in row))

# the product of each line is +I or -I; the third column is the odd one out
eye = identity(4)
for name, line in zip(square.line_names, square.lines()):
    product = reduce(mul, (o.matrix for o in line))
    print(f"{name:9s} product = {'+I' if product == eye else '-I'}")

# each cell has eigenvalues +1 and -1, twice each
print("spectrum of YY:", integer_spectrum(square.cells[2][2].matrix, range(-1, 2)))
