import sys
from pathlib import Path

# the frontend is a flat script package; make `import render` work when
# pytest runs from the repository root
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))
