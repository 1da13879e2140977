"""m-BCI verdicts for small n, with witnesses where they fail."""
import time

from gqbci import is_fif, is_m_bci

for n in range(2, 7):
    t0 = time.perf_counter()
    r2, r3 = is_m_bci(n, 2), is_m_bci(n, 3)
    fif = is_fif(n)
    line = f"n={n}: FIF {fif.verdict}, 2-BCI {r2.verdict}, 3-BCI {r3.verdict}"
    for w in r3.witnesses:
        j = w.to_json()
        line += f"  [{','.join(j['S'])}] ~ [{','.join(j['T'])}]"
    print(line, f"({time.perf_counter() - t0:.1f}s)")

print(is_m_bci(6, 3).stats)
