"""mvkit: multiview learning (embeddings, clustering, co-training, decomposition)."""

try:
    from ._mvkit import *  # noqa: F401,F403  (installed package layout)
    from ._mvkit import __version__  # noqa: F401
except ImportError:  # in-tree builds put _mvkit next to the package on sys.path
    from _mvkit import *  # noqa: F401,F403
    from _mvkit import __version__  # noqa: F401
