# Package marker for the test suite
