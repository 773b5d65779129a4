import sys
from pathlib import Path

# make the src layout importable without an editable install
SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))
