#include "otlab/multiscale.hpp"
