if __name__ == '__main__':
    import sys
    from .signature_cli import main
    sys.exit(main())
