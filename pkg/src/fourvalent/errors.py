class DomainError(ValueError):
    """A well-formed request with no answer; ``code`` is a stable snake_case tag."""

    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code
        self.detail = detail
