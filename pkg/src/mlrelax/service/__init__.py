"""FastAPI service wrapping the core package.

:mod:`.schemas` holds the pydantic request/response models (the wire
format mirrors the JSON file formats), :mod:`.handlers` the pure
request-to-response functions, and :mod:`.app` the HTTP wiring.  The CLI
is a thin client of the same handlers.
"""

from .app import app, create_app

__all__ = ["app", "create_app"]
