"""Exception types shared across the package."""


class LocalignError(Exception):
    """Base class for errors raised by localign on bad inputs or state."""


class GraphFormatError(LocalignError):
    """An edge-list or stream file could not be parsed."""


class DisconnectedGraphletError(LocalignError):
    """A node set whose induced subgraph is disconnected was offered for encoding."""
