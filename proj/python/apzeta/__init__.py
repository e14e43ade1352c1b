try:
    from ._apzeta import *  # noqa: F401,F403
    from ._apzeta import __version__  # noqa: F401
except ImportError:  # in-tree builds put the module on sys.path directly
    from _apzeta import *  # noqa: F401,F403
    from _apzeta import __version__  # noqa: F401
