class InfeasibleError(RuntimeError):
    pass


class UnboundedError(RuntimeError):
    pass
