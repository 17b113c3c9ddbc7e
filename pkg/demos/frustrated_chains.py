# %% [markdown]
# # Frustrated versus unfrustrated rings
#
# Ground-state SRE of the transverse-field Ising ring on an odd number of
# sites, with antiferromagnetic (frustrated) and ferromagnetic couplings.

# %%
import numpy as np

from magique import sre, statevec
from magique.spinchain import SpinChainModel, ground_degeneracy, ground_state

# %%
# classical point: one domain wall, 2L places to put it
[ground_degeneracy(SpinChainModel("tfim", 1, 0.0, L)) for L in (3, 5, 7)]

# %%
L = 9
rows = []
for lam in (0.2, 0.4, 0.8, 1.0, 1.5, 2.0):
    f = ground_state(SpinChainModel("tfim", 1, lam, L)).state
    u = ground_state(SpinChainModel("tfim", -1, lam, L)).state
    mf, mu = sre.sre_fast(f).value, sre.sre_fast(u).value
    rows.append((lam, mf, mu, sre.ratio_R(mf, mu, L)))
for r in rows:
    print("lambda=%.1f  frustrated=%.4f  unfrustrated=%.4f  R=%.3f" % r)

# %% [markdown]
# Deep in the ordered phase the excess is close to a whole W state's worth
# of magic; in the paramagnet it is gone.

# %%
# single-site estimate away from the critical point
gs = ground_state(SpinChainModel("tfim", -1, 2.0, L)).state
m_z = statevec.site_magnetization_z(gs, 1)
L * sre.local_sre_alpha1(m_z), sre.sre_fast(gs).value

# %%
# the cluster-Ising ring picks up a threefold degeneracy when 3 | L
{L: ground_degeneracy(SpinChainModel("cim", 1, 0.5, L)) for L in (5, 7, 9, 11)}

# %%
np.round([statevec.site_magnetization_z(ground_state(SpinChainModel("tfim", J, 0.5, 11)).state, 1) for J in (1, -1)], 5)
