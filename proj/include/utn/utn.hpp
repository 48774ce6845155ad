#ifndef UTN_UTN_HPP
#define UTN_UTN_HPP

#include "errors.hpp"
#include "scalar.hpp"
#include "linalg.hpp"
#include "algebra.hpp"
#include "identity.hpp"
#include "families.hpp"
#include "classify3.hpp"
#include "io.hpp"

#endif  // UTN_UTN_HPP
