class DoublenegError(Exception):
    pass


class InvalidProofError(DoublenegError, ValueError):
    """Raised by operations that require a checked proof."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid proof: {report.violation}")


class ShapeError(DoublenegError, ValueError):
    pass


class StepLimitExceeded(DoublenegError, RuntimeError):
    pass
