"""
    Start the emigdsw dev version without installing it
"""
if __name__ == "__main__":
    from emigdsw.__main__ import start_execution

    start_execution()
