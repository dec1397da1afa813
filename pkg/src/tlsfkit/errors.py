"""Exception hierarchy. Each class maps onto one CLI exit code."""


class TlsfError(Exception):
    exit_code = 2

    def __init__(self, message, pos=None):
        self.message = message
        self.pos = pos
        if pos is not None:
            message = f"{pos[0]}:{pos[1]}: {message}"
        super().__init__(message)


class LexError(TlsfError):
    exit_code = 1


class ParseError(TlsfError):
    exit_code = 1


class ElaborationError(TlsfError):
    exit_code = 2


class KindError(ElaborationError):
    pass


class UnboundIdentifier(ElaborationError):
    pass


class ExportError(TlsfError):
    exit_code = 3
