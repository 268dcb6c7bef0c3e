"""Back-and-forth relations and Scott sentence complexity for countable linear orders."""
__version__ = "0.1.0"
