from mrba.cli import main

main()
