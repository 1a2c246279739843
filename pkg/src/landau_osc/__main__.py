from landau_osc.cli import main

main()
