#ifndef CATMT_CATMT_HPP
#define CATMT_CATMT_HPP

#include "amalgams.hpp"
#include "concrete.hpp"
#include "core.hpp"
#include "exhaustion.hpp"
#include "fo.hpp"
#include "independence.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "structure.hpp"

#endif
