import sys

from k3fib import VerifyOptions
from k3fib.corpus import load_corpus, show_record, verify_all


def main():
    catalog = load_corpus()
    print(f"{len(catalog)} fibrations") # Expected: 52

    for line in show_record(catalog[1], catalog):
        print(line)

    # A quick pass over a few records; drop ids= to verify all 52
    options = VerifyOptions.fast().with_(jobs=2)
    summary = verify_all(catalog, options, ids=[1, 5, 12, 38, 41])
    for line in summary.report_lines():
        print(line)

    for entry in summary.errata():
        print(entry)
    return 0 if summary.ok else 1


# worker processes re-import this module
if __name__ == "__main__":
    sys.exit(main())
