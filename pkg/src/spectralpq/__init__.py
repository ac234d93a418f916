"""spectralpq: a block-based RGB 4:4:4 video codec with per-channel
perceptual quantization driven by spectral sensitivity, block variance,
and motion magnitude."""

from .bench import ExperimentRow, bitrate_reduction, kbps, run_experiment
from .colorimetry import (
    ColorTriplet,
    LightSource,
    PhotonSpec,
    classify_wavelength,
    photon_energy,
    rgb_from_ycbcr,
    ycbcr_from_rgb,
)
from .corpus import CorpusSequence, make_corpus
from .errors import (
    CodecError,
    ConfigurationError,
    DecodeError,
    EncodeError,
    IngestionError,
    StructuralError,
)
from .frames import BlockTree, Frame, load_sequence, partition, save_sequence, subblocks
from .metrics import QualityReport, psnr, quality_report, ssim
from .motion import MotionField, MotionVector, estimate_mv, frame_mean_magnitude, mv_magnitude
from .perceptual import (
    ChannelActivity,
    PerceptualConstants,
    PerceptualQp,
    adaptiveqp_offset,
    cb_activity,
    frame_activity,
    frame_mean_activity,
    normalized_activity,
    perceptual_qp,
    temporal_offset,
)
from .pipeline import EncoderConfig, EncodeResult, decode_sequence, encode_sequence
from .quantizer import (
    QuantParams,
    RdoqConfig,
    quant_params,
    rdoq_quantize,
    urq_dequantize,
    urq_quantize,
)
from .transform import TransformSpec, coefficient_distance, forward, inverse, make_spec

__version__ = "0.1.0"
