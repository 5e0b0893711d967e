#!/usr/bin/env python3
"""Regenerate the embedded Lambda log-derivative literals in swlab.algebra.

Lambda(s) = pi^(-s/2) Gamma(s/2) zeta(s), so

    Lambda'(2)/Lambda(2) = -log(pi)/2 + psi(1)/2 + zeta'(2)/zeta(2)

and the functional equation Lambda(s) = Lambda(1-s) gives
Lambda'(-1)/Lambda(-1) = -Lambda'(2)/Lambda(2).

Requires mpmath (build-time only; the library embeds the literals).
"""

import mpmath as mp

mp.mp.dps = 40
lam2 = -mp.log(mp.pi) / 2 + mp.digamma(1) / 2 + mp.zeta(2, derivative=1) / mp.zeta(2)
print("LAMBDA_PRIME_RATIO_AT_2 =", mp.nstr(lam2, 30))
print("LAMBDA_PRIME_RATIO_AT_NEG1 =", mp.nstr(-lam2, 30))
