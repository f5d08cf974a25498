"""Exception hierarchy shared by every stage of the pipeline."""


class ThfcmError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(ThfcmError, ValueError):
    """A configuration value violates its documented constraint."""


class EvenWindow(ConfigError):
    pass


class WindowOutOfRange(ConfigError):
    pass


class InsufficientData(ThfcmError, ValueError):
    """Fewer data points than requested clusters."""


class NonFiniteInput(ThfcmError, ValueError):
    pass


class DegenerateImage(ThfcmError, ValueError):
    """The image holds a single gray value, so there is nothing to separate."""


class ImageFormatError(ThfcmError, ValueError):
    """Base for decoding failures."""


class MalformedHeader(ImageFormatError):
    pass


class TruncatedData(ImageFormatError):
    pass


class UnsupportedMaxval(ImageFormatError):
    pass


class UnsupportedFormat(ImageFormatError):
    """Magic number is not a grayscale PGM (P2/P5); color Netpbm files land here."""


class MalformedData(ImageFormatError):
    """Pixel payload is unreadable or exceeds the declared maxval."""
