"""Term candidate extraction from POS-tagged corpora.

Maximal noun phrases are chunked out of a vertical tagged corpus, parsed
into head-modifier trees with a small set of POS patterns helped by
islands of reliability (known terms, or phrases parsed earlier in the
run), and written out as ranked candidate lists with corpus statistics.
"""

from mnpterm.errors import FormatError

__version__ = "0.1.0"

__all__ = ["FormatError", "__version__"]
