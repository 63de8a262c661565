# Keeps tests/ on sys.path so the shared oracle and generator helpers import.
