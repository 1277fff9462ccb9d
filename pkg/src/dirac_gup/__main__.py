from dirac_gup.cli import main

raise SystemExit(main())
