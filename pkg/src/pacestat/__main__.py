from pacestat.cli import main

main()
