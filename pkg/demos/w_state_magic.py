# %% [markdown]
# # Magic of the W state
#
# Brute-force stabilizer Renyi entropy against the closed form, and the
# Clifford circuit that turns W into the symmetric kink superposition.

# %%
import numpy as np

from magique import clifford, statevec, sre

# %%
for L in (1, 3, 5, 7, 9):
    w = statevec.make_w_state(L)
    print(L, sre.sre_fast(w).value, sre.sre_w_analytic(L).value)

# %% [markdown]
# The Pauli sum splits into diagonal and off-diagonal parts, both rational.

# %%
comp = sre.w_sum_components(5)
comp.O_eq, comp.O_neq, comp.M2

# %%
# the T state sits well below W_3
print(sre.sre_naive(statevec.make_t_state()).value, np.log2(4 / 3))

# %% [markdown]
# ## W to W_k

# %%
L = 7
circ = clifford.build_s_circuit(L)
print(circ.counts())
out = clifford.apply_circuit(circ, statevec.make_w_state(L))
abs(statevec.overlap(statevec.make_wk_state(L), out))

# %%
sre.sre_fast(out).value - sre.sre_fast(statevec.make_w_state(L)).value
