"""Entry point for running as a module: python -m twoqubit_eof"""

from twoqubit_eof.main import main

if __name__ == "__main__":
    main()
