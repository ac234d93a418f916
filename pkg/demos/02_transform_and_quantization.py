"""Integer transforms and the URQ / RDOQ quantizer pair.

Run:  python demos/02_transform_and_quantization.py
"""

import numpy as np

from spectralpq.entropy import block_bits
from spectralpq.quantizer import (
    quant_params,
    rdoq_config,
    rdoq_quantize,
    urq_dequantize,
    urq_quantize,
)
from spectralpq.transform import coefficient_distance, dct_matrix, forward, inverse, make_spec

print("== the 4x4 integer cosine basis ==")
print(dct_matrix(4))

print("\n== forward -> inverse round trip on a random 10-bit block ==")
rng = np.random.default_rng(0)
spec = make_spec(8, "DCT", 10)
block = rng.integers(-1023, 1024, (8, 8))
coeffs = forward(block, spec)
recon = inverse(coeffs, spec)
print(f"  max |x - inverse(forward(x))| = {np.max(np.abs(recon - block))} (never more than 1)")
print(f"  DC sits at distance {coefficient_distance((0, 0), 8)}, the corner at "
      f"{coefficient_distance((7, 7), 8):.2f}")

print("\n== step sizes double every six QP ==")
for qp in (0, 4, 10, 22, 28, 34):
    p = quant_params(qp, 4)
    print(f"  qp {qp:2d}: qstep {p.qstep:8.4f}  m {p.m:5d}  s {p.s:3d}  (m*s = {p.m * p.s})")

print("\n== URQ on one coefficient ==")
for x in (32, 320, 3200):
    level = urq_quantize(x, 4, 4)
    print(f"  X={x:5d} -> level {level:3d} -> reconstruction {urq_dequantize(level, 4, 4)}")

print("\n== RDOQ trades distortion for bits ==")
spec8 = make_spec(8, "DCT", 8)
texture = rng.integers(-40, 41, (8, 8))
coeffs = forward(texture, spec8)
for qp in (22, 32):
    hard = urq_quantize(coeffs, qp, 8)
    soft = rdoq_quantize(coeffs, qp, 8, rdoq_config(qp, 8))
    print(f"  qp {qp}: URQ {block_bits(hard):3d} bits, RDOQ {block_bits(soft):3d} bits, "
          f"levels zeroed: {int(np.sum((hard != 0) & (soft == 0)))}")
