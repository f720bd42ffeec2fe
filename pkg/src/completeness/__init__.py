"""
Numerical and exact checks behind the completeness of {CNOT, S} and {Toffoli, H}.
"""
