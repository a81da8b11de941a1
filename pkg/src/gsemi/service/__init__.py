"""HTTP service exposing the library over JSON.

The CLI is a thin client of this app; by default it mounts the app
in-process, so no socket is involved unless a remote server is requested.
"""

from gsemi.service.app import create_app

__all__ = ["create_app"]
