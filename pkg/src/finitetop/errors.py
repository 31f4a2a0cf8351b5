class FormatError(Exception):
    """Malformed input: bad file syntax, unknown labels, unusable arguments."""


class ValidationError(Exception):
    """A mathematical precondition failed; carries a witness when one exists.

    The witness is a plain dict so reports and the CLI can render it
    without knowing which operation produced it.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = dict(witness) if witness else {}
