#include "otlab/poisson.hpp"
