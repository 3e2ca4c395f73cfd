#pragma once

#include "classify.hpp"
#include "conjugate.hpp"
#include "embed.hpp"
#include "error.hpp"
#include "joergensen.hpp"
#include "matrix2.hpp"
#include "quaternion.hpp"
#include "scanner.hpp"
