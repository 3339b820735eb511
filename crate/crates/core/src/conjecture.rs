// assignment harness
