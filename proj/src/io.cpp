#include "otlab/io.hpp"
