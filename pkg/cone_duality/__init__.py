# cone_duality/__init__.py
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("cone_duality")
except PackageNotFoundError:
    __version__ = "0.0.0"
