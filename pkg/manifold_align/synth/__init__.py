from .generator import Nonlinearity, SynthConfig, class_name, generate, generate_latents

__all__ = ["Nonlinearity", "SynthConfig", "class_name", "generate", "generate_latents"]
