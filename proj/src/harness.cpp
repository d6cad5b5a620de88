#include "otlab/harness.hpp"
