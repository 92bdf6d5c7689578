# Computation services
