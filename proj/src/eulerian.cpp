#include "otlab/eulerian.hpp"
