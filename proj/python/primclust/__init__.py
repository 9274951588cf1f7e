try:
    from ._primclust import *  # noqa: F401,F403
    from ._primclust import __version__  # noqa: F401
except ImportError:  # extension built next to the package (plain CMake builds)
    from _primclust import *  # noqa: F401,F403
    from _primclust import __version__  # noqa: F401
