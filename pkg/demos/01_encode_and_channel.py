"""Encode a short polar code and push it through the noisy deletion channel."""

import numpy as np

from polar_deletion import ChannelParams, CodeConfig, encode, modulate, trial_rng, transmit
from polar_deletion.polar import bhattacharyya_bec

# %% Code construction: freeze the N-K least reliable bit-channels
N, K = 16, 8
z = bhattacharyya_bec(N, 0.5)
cfg = CodeConfig.build(N, K)
print("Bhattacharyya parameters:", np.round(z, 4))
print("frozen:", cfg.frozen.tolist())
print("information:", cfg.info.tolist())

# %% Encoding is an involution over GF(2)
rng = trial_rng(seed=7, trial=0)
u = cfg.embed(rng.integers(0, 2, K))
x = encode(u)
print("u      :", u)
print("x      :", x)
print("enc(x) :", encode(x))

# %% Channel: BPSK, delete d symbols uniformly, add noise
params = ChannelParams(d=2, sigma2=0.3)
y, pattern = transmit(x, params, rng, return_pattern=True)
print("sent   :", modulate(x))
print("deleted positions:", pattern.positions)
print("received (%d symbols):" % y.size, np.round(y, 2))
