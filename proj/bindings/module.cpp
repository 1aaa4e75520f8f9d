#include <pybind11/pybind11.h>
PYBIND11_MODULE(poincare, m) { m.doc() = "placeholder"; }
