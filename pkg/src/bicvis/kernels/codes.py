PROX = 0
AREA = 1
UNINT = 2
DEMERIT = 3
