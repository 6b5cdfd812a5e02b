#pragma once

#include "wallform/error.hpp"
#include "wallform/field.hpp"
#include "wallform/linalg.hpp"
#include "wallform/quadspace.hpp"
#include "wallform/isometry.hpp"
#include "wallform/wall.hpp"
#include "wallform/decompose.hpp"
#include "wallform/clifford.hpp"
#include "wallform/oracle.hpp"
