"""Facial makeup transfer by CIELAB layer decomposition, alpha-blended
color transfer, direct detail transfer and illumination transfer."""

__version__ = "0.1.0"
