# critgroup: critical groups of modules over finite-dimensional Hopf algebras
# Core application modules
