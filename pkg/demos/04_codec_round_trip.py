"""Full encode -> decode cycle with quality metrics and bit accounting.

Run:  python demos/04_codec_round_trip.py
"""

import numpy as np

from spectralpq.corpus import moving_object
from spectralpq.metrics import quality_report
from spectralpq.pipeline import EncoderConfig, decode_sequence, encode_sequence

seq = moving_object(frame_count=12)
config = EncoderConfig(base_qp=27, mode="spectral-pq")
result = encode_sequence(seq.frames, config)

print(f"encoded {len(seq.frames)} frames of {seq.frames[0].width}x{seq.frames[0].height} "
      f"to {len(result.bitstream)} bytes")

decoded = decode_sequence(result.bitstream)
exact = all(
    np.array_equal(d.plane(ch), r.plane(ch))
    for d, r in zip(decoded, result.reconstruction)
    for ch in ("G", "B", "R")
)
print(f"decoder output equals encoder reconstruction bit-exactly: {exact}")

print("\nframe  type  bits    bits G/B/R          PSNR G/B/R (vs source)")
for fstat, src, rec in zip(result.stats.frames, seq.frames, decoded):
    rep = quality_report(src, rec)
    chan = "/".join(str(fstat.bits_channel[ch]) for ch in ("G", "B", "R"))
    psnr = "/".join(f"{rep.psnr[ch]:.1f}" for ch in ("G", "B", "R"))
    print(f"{fstat.index:5d}  {fstat.frame_type}     {fstat.bits_total:6d}  {chan:18s} {psnr}")

last = quality_report(seq.frames[-1], decoded[-1])
print(f"\nlast-frame SSIM: G {last.ssim['G']:.4f}  B {last.ssim['B']:.4f}  "
      f"R {last.ssim['R']:.4f}  mean {last.ssim_mean:.4f}")
print(f"visually-lossless correlate (mean SSIM > 0.95): {last.visually_lossless}")
print("\nthe G channel keeps more bits and more fidelity than B and R on every frame;")
print("that is the per-channel quantization doing its job.")
